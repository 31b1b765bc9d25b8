#include <qseries/catalog.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace qseries
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void take(Report &r, const CheckResult &c)
{
    r.status = c.passed() ? Status::pass : Status::fail;
    r.difference = c.difference;
    r.index = c.index;
    r.lhs_terms = c.checked;
    r.rhs_terms = c.checked;
}

std::string side_name(ReindexSide s)
{
    return s == ReindexSide::identity ? "identity" : "mizuno";
}

ReindexSide parse_side(const std::string &s)
{
    if (s == "identity") {
        return ReindexSide::identity;
    }
    if (s == "mizuno") {
        return ReindexSide::mizuno;
    }
    throw Error("reindex side must be 'identity' or 'mizuno'");
}

Json check_to_json(const Check &c)
{
    return std::visit(
        overloaded{
            [](const ExprIdentity &x) {
                return Json{{"kind", "identity"}, {"lhs", to_json(*x.lhs)}, {"rhs", to_json(*x.rhs)}};
            },
            [](const ReindexCheck &x) {
                return Json{{"kind", "reindex"}, {"b", to_json(x.b)}, {"side", side_name(x.side)}};
            },
            [](const SplittingCheck &x) { return Json{{"kind", "splitting"}, {"n_max", x.n_max}}; },
            [](const PairCheck &x) {
                return Json{{"kind", "bailey-pair"},
                            {"pair", to_string(x.pair)},
                            {"scale", rational_to_json(x.scale)},
                            {"n_max", x.n_max}};
            },
            [](const TransformCheck &x) {
                return Json{{"kind", "bailey-transform"},
                            {"pair", to_string(x.pair)},
                            {"scale", rational_to_json(x.scale)},
                            {"transform", to_string(x.transform)}};
            },
            [](const FiniteCheck &x) {
                return Json{{"kind", "finite"},
                            {"which", x.which == FiniteIdentity::even ? "even" : "odd"},
                            {"x_exp", rational_to_json(x.x_exp)},
                            {"n_max", x.n_max}};
            },
            [](const GaussCheck &x) {
                return Json{{"kind", "q-gauss"},
                            {"a_exp", rational_to_json(x.a_exp)},
                            {"b_exp", rational_to_json(x.b_exp)},
                            {"c_exp", rational_to_json(x.c_exp)}};
            },
        },
        c);
}

Check check_from_json(const Json &j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "identity") {
        return ExprIdentity{expr_from_json(j.at("lhs")), expr_from_json(j.at("rhs"))};
    }
    if (kind == "reindex") {
        return ReindexCheck{vector_from_json(j.at("b")), parse_side(j.at("side").get<std::string>())};
    }
    if (kind == "splitting") {
        return SplittingCheck{j.at("n_max").get<std::int64_t>()};
    }
    if (kind == "bailey-pair") {
        return PairCheck{parse_builtin_pair(j.at("pair").get<std::string>()), rational_from_json(j.at("scale")),
                         j.at("n_max").get<std::int64_t>()};
    }
    if (kind == "bailey-transform") {
        return TransformCheck{parse_builtin_pair(j.at("pair").get<std::string>()), rational_from_json(j.at("scale")),
                              parse_transform(j.at("transform").get<std::string>())};
    }
    if (kind == "finite") {
        const auto w = j.at("which").get<std::string>();
        if (w != "even" && w != "odd") {
            throw Error("finite identity must be 'even' or 'odd'");
        }
        return FiniteCheck{w == "even" ? FiniteIdentity::even : FiniteIdentity::odd, rational_from_json(j.at("x_exp")),
                           j.at("n_max").get<std::int64_t>()};
    }
    if (kind == "q-gauss") {
        return GaussCheck{rational_from_json(j.at("a_exp")), rational_from_json(j.at("b_exp")),
                          rational_from_json(j.at("c_exp"))};
    }
    throw Error("unknown check kind '" + kind + "'");
}

} // namespace

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "PASS";
    case Status::fail:
        return "FAIL";
    case Status::expected_fail:
        return "XFAIL";
    case Status::unexpected_pass:
        return "XPASS";
    case Status::error:
        return "ERROR";
    }
    return "?";
}

CheckResult q_gauss_check(const Rational &a_exp, const Rational &b_exp, const Rational &c_exp, const Rational &t)
{
    if (a_exp < 0 || b_exp < 0) {
        throw Error("q-Gauss check needs a_exp >= 0 and b_exp >= 0");
    }
    const Rational d = c_exp - a_exp - b_exp;
    if (d <= 0) {
        throw Error("q-Gauss requires c_exp > a_exp + b_exp for the sum to converge");
    }
    QExp lhs = QExp::zero_to(t);
    std::size_t checked = 0;
    for (std::int64_t n = 0; d * n <= t; ++n) {
        const Rational e = d * n;
        const Rational inner = t - e;
        const QExp num = poch(poch_finite(1, a_exp, 1, n), inner) * poch(poch_finite(1, b_exp, 1, n), inner);
        const QExp den = poch(poch_finite(1, 1, 1, n), inner) * poch(poch_finite(1, c_exp, 1, n), inner);
        lhs = lhs + (num * invert(den, inner)).truncated(inner).shifted(e);
        ++checked;
    }
    const QExp top = poch(poch_infinite(1, c_exp - a_exp, 1), t) * poch(poch_infinite(1, c_exp - b_exp, 1), t);
    const QExp bottom = poch(poch_infinite(1, c_exp, 1), t) * poch(poch_infinite(1, d, 1), t);
    const QExp rhs = top * invert(bottom, t);
    CheckResult r;
    r.checked = checked;
    const auto cmp = equal_to(lhs, rhs, t);
    r.difference = cmp.difference;
    return r;
}

Report verify_identity(const IdentityRecord &rec, std::optional<Rational> order_override)
{
    Report r;
    r.name = rec.name;
    r.order = order_override.value_or(rec.order);
    const auto start = std::chrono::steady_clock::now();
    const Rational &t = r.order;
    try {
        if (t <= 0) {
            throw Error("record order must be positive");
        }
        std::visit(overloaded{
                       [&](const ExprIdentity &x) {
                           const QExp lhs = eval_expr(*x.lhs, t);
                           const QExp rhs = eval_expr(*x.rhs, t);
                           r.lhs_terms = lhs.truncated(t).term_count();
                           r.rhs_terms = rhs.truncated(t).term_count();
                           const auto cmp = equal_to(lhs, rhs, t);
                           r.status = cmp.equal() ? Status::pass : Status::fail;
                           r.difference = cmp.difference;
                       },
                       [&](const ReindexCheck &x) {
                           const auto p = reindex_rank4(x.b, x.side, t);
                           r.lhs_terms = p.lhs.truncated(t).term_count();
                           r.rhs_terms = p.rhs.truncated(t).term_count();
                           const auto cmp = equal_to(p.lhs, p.rhs, t);
                           r.status = cmp.equal() ? Status::pass : Status::fail;
                           r.difference = cmp.difference;
                       },
                       [&](const SplittingCheck &x) { take(r, splitting_check(x.n_max, t)); },
                       [&](const PairCheck &x) { take(r, verify_pair(builtin_pair(x.pair, x.scale), x.n_max, t)); },
                       [&](const TransformCheck &x) {
                           const auto p = apply_transform(builtin_pair(x.pair, x.scale), x.transform, t);
                           r.lhs_terms = p.lhs.truncated(t).term_count();
                           r.rhs_terms = p.rhs.truncated(t).term_count();
                           const auto cmp = equal_to(p.lhs, p.rhs, t);
                           r.status = cmp.equal() ? Status::pass : Status::fail;
                           r.difference = cmp.difference;
                       },
                       [&](const FiniteCheck &x) { take(r, finite_identity_check(x.which, x.x_exp, x.n_max, t)); },
                       [&](const GaussCheck &x) { take(r, q_gauss_check(x.a_exp, x.b_exp, x.c_exp, t)); },
                   },
                   rec.check);
        if (rec.expect_fail) {
            r.status = r.status == Status::pass ? Status::unexpected_pass : Status::expected_fail;
        }
    } catch (const std::exception &e) {
        r.status = Status::error;
        r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::size_t Summary::count(Status s) const
{
    return static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [s](const Report &r) { return r.status == s; }));
}

bool Summary::ok() const
{
    return std::none_of(reports.begin(), reports.end(), [](const Report &r) { return r.bad(); });
}

std::vector<IdentityRecord> filter_records(const std::vector<IdentityRecord> &records, const std::string &filter)
{
    if (filter.empty()) {
        return records;
    }
    std::vector<IdentityRecord> out;
    for (const auto &r : records) {
        bool hit = r.name.find(filter) != std::string::npos;
        for (const auto &tag : r.tags) {
            hit = hit || tag.find(filter) != std::string::npos;
        }
        if (hit) {
            out.push_back(r);
        }
    }
    return out;
}

Summary run_catalog(const std::vector<IdentityRecord> &records, const CatalogOptions &options)
{
    const auto selected = filter_records(records, options.filter);
    Summary s;
    s.reports.resize(selected.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (auto i = next++; i < selected.size(); i = next++) {
            s.reports[i] = verify_identity(selected[i], options.order_override);
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(selected.size())));
    if (n <= 1) {
        work();
        return s;
    }
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) {
        pool.emplace_back(work);
    }
    return s;
}

std::string format_summary(const Summary &s, bool with_timing)
{
    std::ostringstream out;
    for (const auto &r : s.reports) {
        out << to_string(r.status) << "  " << r.name << "  (order " << to_string(r.order);
        if (r.lhs_terms || r.rhs_terms) {
            out << ", terms " << r.lhs_terms << "/" << r.rhs_terms;
        }
        if (with_timing) {
            out << ", " << static_cast<long>(r.seconds * 1000) << " ms";
        }
        out << ")\n";
        if (r.difference) {
            out << "    first difference";
            if (r.index) {
                out << " at n = " << *r.index << ",";
            }
            out << " at " << exponent_string(r.difference->exponent) << ": " << to_string(r.difference->lhs) << " vs "
                << to_string(r.difference->rhs) << "\n";
        }
        if (!r.message.empty()) {
            out << "    " << r.message << "\n";
        }
    }
    out << s.reports.size() << " records: " << s.count(Status::pass) << " passed, " << s.count(Status::fail)
        << " failed, " << s.count(Status::expected_fail) << " expected failures, " << s.count(Status::unexpected_pass)
        << " unexpected passes, " << s.count(Status::error) << " errors\n";
    return out.str();
}

Json to_json(const IdentityRecord &r)
{
    Json j{{"name", r.name}, {"tags", r.tags}, {"order", rational_to_json(r.order)}};
    if (!r.permutation.empty()) {
        j["permutation"] = r.permutation;
    }
    if (r.expect_fail) {
        j["expect_fail"] = true;
    }
    j["check"] = check_to_json(r.check);
    return j;
}

IdentityRecord record_from_json(const Json &j)
{
    IdentityRecord r;
    r.name = j.at("name").get<std::string>();
    if (j.contains("tags")) {
        r.tags = j.at("tags").get<std::vector<std::string>>();
    }
    if (j.contains("order")) {
        r.order = rational_from_json(j.at("order"));
        if (r.order <= 0) {
            throw Error("order must be positive");
        }
    }
    r.permutation = j.value("permutation", std::string());
    r.expect_fail = j.value("expect_fail", false);
    r.check = check_from_json(j.at("check"));
    return r;
}

Json catalog_to_json(const std::vector<IdentityRecord> &records)
{
    Json out = Json::array();
    for (const auto &r : records) {
        out.push_back(to_json(r));
    }
    return out;
}

std::vector<IdentityRecord> catalog_from_json(const Json &j)
{
    if (!j.is_array()) {
        throw Error("catalog must be a JSON array of records");
    }
    std::vector<IdentityRecord> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            out.push_back(record_from_json(j.at(i)));
        } catch (const std::exception &e) {
            std::string name;
            if (j.at(i).is_object() && j.at(i).contains("name") && j.at(i).at("name").is_string()) {
                name = " '" + j.at(i).at("name").get<std::string>() + "'";
            }
            throw Error("record " + std::to_string(i) + name + ": " + e.what());
        }
    }
    return out;
}

std::vector<IdentityRecord> load_catalog(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open catalog '" + path + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error("catalog '" + path + "': " + e.what());
    }
    return catalog_from_json(j);
}

} // namespace qseries

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <qseries/bailey.hpp>
#include <qseries/catalog.hpp>
#include <qseries/eta_fit.hpp>
#include <qseries/json_io.hpp>
#include <qseries/nahm.hpp>

namespace qseries::cli
{

namespace
{

enum Exit
{
    ok = 0,
    mismatch = 1,
    usage = 2,
};

Json read_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error("'" + path + "': " + e.what());
    }
}

// Objects get one key per line with compact values; anything else is indented normally.
std::string pretty(const Json &j)
{
    if (!j.is_object()) {
        return j.dump(2);
    }
    std::string s = "{";
    const char *sep = "\n";
    for (const auto &[key, value] : j.items()) {
        s += sep + std::string("  ") + Json(key).dump() + ": " + value.dump();
        sep = ",\n";
    }
    return s + "\n}";
}

void write_json(const std::string &path, const Json &j)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << pretty(j) << "\n";
}

std::vector<Rational> parse_list(const std::string &text)
{
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(parse_rational(item));
        }
    }
    return out;
}

// The first n nonzero terms.
std::string head(const QExp &s, std::size_t n)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (s.coeffs()[i] != 0 && ++seen == n) {
            return to_string(s.truncated(s.exponent_at(i))) + " + ...";
        }
    }
    return to_string(s, true);
}

std::string difference_text(const Difference &d)
{
    return "first difference at " + exponent_string(d.exponent) + ": " + to_string(d.lhs) + " vs " + to_string(d.rhs);
}

std::string describe(const EtaQuotient &q)
{
    std::string s = exps_string(q) + ", weight " + to_string(weight(q));
    if (q.scalar != 1) {
        s += ", scalar " + to_string(q.scalar);
    }
    if (q.vshift != 0) {
        s += ", shift " + exponent_string(q.vshift);
    }
    return s;
}

std::string describe(const EtaFit &f)
{
    if (f.found()) {
        return describe(*f.quotient);
    }
    return "not an eta quotient (first residual at " + exponent_string(*f.residual) + ")";
}

struct ExpandArgs
{
    std::string input;
    std::string order = "10";
    std::string spec;
    std::string json;
};

int cmd_expand(const ExpandArgs &a, std::ostream &out)
{
    const auto q = quadruple_from_json(read_json(a.input));
    const Rational t = parse_rational(a.order);
    std::optional<MonomialVector> spec;
    if (!a.spec.empty()) {
        spec = parse_list(a.spec);
    }
    const QExp s = gnahm_expand(q, t, spec);
    out << to_string(s) << "\n";
    if (!a.json.empty()) {
        write_json(a.json, to_json(s));
    }
    return ok;
}

struct DualArgs
{
    std::string input;
    bool check = false;
    std::string order = "20";
    std::string json;
};

int cmd_dual(const DualArgs &a, std::ostream &out)
{
    const Json doc = read_json(a.input);
    const auto q = quadruple_from_json(doc);
    q.validate();
    const auto d = dual_quadruple(q);
    const Json j = is_plain_triple(doc) ? to_json(ModularTriple{d.A, d.B, d.C}) : to_json(d);
    out << pretty(j) << "\n";
    if (!a.json.empty()) {
        write_json(a.json, j);
    }
    if (a.check) {
        const Rational t = parse_rational(a.order);
        for (const auto &[label, x] : {std::pair{"original", &q}, std::pair{"dual", &d}}) {
            const QExp s = gnahm_expand(*x, t);
            out << label << ": " << head(s, 6) << "\n";
            try {
                out << "  eta fit: " << describe(fit_eta(s, default_moduli(s), t)) << "\n";
            } catch (const Error &e) {
                out << "  eta fit: " << e.what() << "\n";
            }
        }
    }
    return ok;
}

struct CatalogArgs
{
    std::string path;
    std::string order;
    std::string filter;
    unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
    bool timing = false;
    std::string dump;
};

int cmd_catalog(const CatalogArgs &a, std::ostream &out)
{
    const auto records = a.path.empty() ? builtin_catalog() : load_catalog(a.path);
    if (!a.dump.empty()) {
        const auto selected = filter_records(records, a.filter);
        write_json(a.dump, catalog_to_json(selected));
        out << "wrote " << selected.size() << " records to " << a.dump << "\n";
        return ok;
    }
    CatalogOptions opt;
    opt.filter = a.filter;
    opt.workers = a.parallel;
    if (!a.order.empty()) {
        opt.order_override = parse_rational(a.order);
        if (*opt.order_override <= 0) {
            throw Error("--order must be positive");
        }
    }
    const auto summary = run_catalog(records, opt);
    out << format_summary(summary, a.timing);
    return summary.ok() ? ok : mismatch;
}

struct BaileyArgs
{
    std::string pair;
    std::string scale;
    std::int64_t nmax = 12;
    std::string order = "25";
    std::string transform;
};

int cmd_bailey(const BaileyArgs &a, std::ostream &out)
{
    const auto which = parse_builtin_pair(a.pair);
    const Rational t = parse_rational(a.order);
    if (a.transform.empty()) {
        const Rational scale = a.scale.empty() ? Rational(1) : parse_rational(a.scale);
        const auto r = verify_pair(builtin_pair(which, scale), a.nmax, t);
        if (r.passed()) {
            out << "PASS  " << a.pair << " (n <= " << a.nmax << ", order " << to_string(t) << ")\n";
            return ok;
        }
        out << "FAIL  " << a.pair;
        if (r.index) {
            out << " at n = " << *r.index;
        }
        out << ": " << difference_text(*r.difference) << "\n";
        return mismatch;
    }
    const auto tr = parse_transform(a.transform);
    const Rational scale = !a.scale.empty() ? parse_rational(a.scale) : tr == Transform::tbl ? Rational(2) : Rational(1);
    const auto p = apply_transform(builtin_pair(which, scale), tr, t);
    out << "lhs: " << head(p.lhs, 10) << "\n";
    out << "rhs: " << head(p.rhs, 10) << "\n";
    const auto cmp = equal_to(p.lhs, p.rhs, t);
    if (cmp.equal()) {
        out << "EQUAL\n";
        return ok;
    }
    out << "DIFFERENT  " << difference_text(*cmp.difference) << "\n";
    return mismatch;
}

struct FitArgs
{
    std::string input;
    std::string expr;
    std::string moduli;
    std::string order = "20";
    bool json = false;
};

// A series, an expression, an eta quotient or a Nahm quadruple.
std::pair<QExp, ExprPtr> load_series(const Json &j, const Rational &t)
{
    if (!j.is_object()) {
        throw Error("fit input must be a JSON object");
    }
    if (j.contains("op")) {
        auto e = expr_from_json(j);
        return {eval_expr(*e, t), e};
    }
    if (j.contains("coeffs")) {
        return {qexp_from_json(j), nullptr};
    }
    if (j.contains("exps")) {
        return {eta_expand(eta_from_json(j), t), nullptr};
    }
    if (j.contains("A")) {
        return {gnahm_expand(quadruple_from_json(j), t), nullptr};
    }
    throw Error("fit input is not a series, expression, eta quotient or Nahm quadruple");
}

int cmd_fit(const FitArgs &a, std::ostream &out)
{
    if (a.input.empty() == a.expr.empty()) {
        throw Error("give exactly one of an input file or --expr");
    }
    Json doc;
    if (a.input.empty()) {
        try {
            doc = Json::parse(a.expr);
        } catch (const nlohmann::json::parse_error &e) {
            throw Error(std::string("--expr: ") + e.what());
        }
    } else {
        doc = read_json(a.input);
    }
    const Rational t = parse_rational(a.order);
    const auto [series, e] = load_series(doc, t);
    const auto moduli = a.moduli.empty() ? default_moduli(series) : parse_list(a.moduli);

    // A sum is classified term by term; anything else is fitted whole.
    if (e && std::holds_alternative<AddNode>(e->node)) {
        std::vector<std::pair<Rational, QExp>> terms;
        for (const auto &arg : std::get<AddNode>(e->node).args) {
            terms.emplace_back(1, eval_expr(*arg, t));
        }
        const auto c = classify(terms, moduli, t);
        if (a.json) {
            out << to_json(c).dump(2) << "\n";
        } else {
            out << to_string(c.kind) << "\n";
            if (c.single) {
                out << "  " << describe(*c.single) << "\n";
            }
            for (const auto &term : c.terms) {
                out << "  " << describe(term.quotient) << "\n";
            }
            if (c.kind == Classification::Kind::mixed_weights) {
                out << (c.distinct_weights() ? "mixed-weight eta combination\n" : "all terms share one weight\n");
            }
        }
        return c.kind == Classification::Kind::unrecognized ? mismatch : ok;
    }
    const auto fit = fit_eta(series, moduli, t);
    if (a.json) {
        out << to_json(fit).dump(2) << "\n";
    } else {
        out << describe(fit) << "\n";
    }
    return fit.found() ? ok : mismatch;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact q-series toolkit: Nahm sums, duals, Bailey pairs and eta quotients"};
    app.require_subcommand(1);

    ExpandArgs ea;
    auto *expand = app.add_subcommand("expand", "Expand a Nahm triple or quadruple");
    expand->add_option("input", ea.input, "JSON file with A, B, C and optional D")->required();
    expand->add_option("--order", ea.order, "Truncation order (rational)")->capture_default_str();
    expand->add_option("--spec", ea.spec, "Monomial specialization b1,b2,...");
    expand->add_option("--json", ea.json, "Also write the series as JSON");

    DualArgs da;
    auto *dual = app.add_subcommand("dual", "Print the dual triple or quadruple");
    dual->add_option("input", da.input, "JSON file with A, B, C and optional D")->required();
    dual->add_flag("--check", da.check, "Expand both sides and try an eta fit");
    dual->add_option("--order", da.order, "Order for --check")->capture_default_str();
    dual->add_option("--json", da.json, "Also write the dual as JSON");

    CatalogArgs ca;
    auto *catalog = app.add_subcommand("catalog", "Verify an identity catalog");
    catalog->add_option("path", ca.path, "Catalog JSON file (default: built-in catalog)");
    catalog->add_option("--order", ca.order, "Override every record's order");
    catalog->add_option("--filter", ca.filter, "Keep records whose name or a tag contains this text");
    catalog->add_option("--parallel", ca.parallel, "Worker threads")->check(CLI::PositiveNumber);
    catalog->add_flag("--timing", ca.timing, "Show per-record times");
    catalog->add_option("--dump", ca.dump, "Write the selected records as JSON instead of running them");

    BaileyArgs ba;
    auto *bailey = app.add_subcommand("bailey", "Check a built-in Bailey pair or transform");
    bailey->add_option("--pair", ba.pair, "BP1, BP2, BP3 or BP4")->required();
    bailey->add_option("--scale", ba.scale, "Base q^s of the pair");
    bailey->add_option("--nmax", ba.nmax, "Largest n checked")->capture_default_str()->check(CLI::NonNegativeNumber);
    bailey->add_option("--order", ba.order, "Truncation order")->capture_default_str();
    bailey->add_option("--transform", ba.transform, "TBL, S2BL or T128");

    FitArgs fa;
    auto *fit = app.add_subcommand("fit", "Recognize an eta quotient");
    fit->add_option("input", fa.input, "JSON series, expression, eta quotient or quadruple");
    fit->add_option("--expr", fa.expr, "Inline JSON expression");
    fit->add_option("--moduli", fa.moduli, "Comma-separated moduli (default: divisors of 12)");
    fit->add_option("--order", fa.order, "Truncation order")->capture_default_str();
    fit->add_flag("--json", fa.json, "Print the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        if (*expand) {
            return cmd_expand(ea, out);
        }
        if (*dual) {
            return cmd_dual(da, out);
        }
        if (*catalog) {
            return cmd_catalog(ca, out);
        }
        if (*bailey) {
            return cmd_bailey(ba, out);
        }
        return cmd_fit(fa, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

} // namespace qseries::cli

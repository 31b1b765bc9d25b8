#include <qseries/json_io.hpp>

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

using qseries::to_json;

const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

Rational rational_or(const Json &j, const char *key, const Rational &fallback)
{
    return j.contains(key) ? rational_from_json(j.at(key)) : fallback;
}

std::optional<std::int64_t> optional_int(const Json &j, const char *key, std::optional<std::int64_t> fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    const auto &v = j.at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    if (!v.is_number_integer()) {
        throw Error(std::string("field '") + key + "' must be an integer or null");
    }
    return v.get<std::int64_t>();
}

Json optional_to_json(const std::optional<std::int64_t> &v)
{
    return v ? Json(*v) : Json(nullptr);
}

Json to_json(const AffineForm &a)
{
    return Json{{"coeffs", to_json(a.coeffs)}, {"const", rational_to_json(a.constant)}};
}

AffineForm affine_from_json(const Json &j)
{
    if (j.is_string() || j.is_number()) {
        return AffineForm{{}, rational_from_json(j)};
    }
    return AffineForm{j.contains("coeffs") ? vector_from_json(j.at("coeffs")) : RatVector{},
                      rational_or(j, "const", 0)};
}

Json to_json(const SumPoch &p)
{
    return Json{{"c", rational_to_json(p.coeff)},
                {"e", rational_to_json(p.arg_exp)},
                {"s", rational_to_json(p.step)},
                {"len", to_json(p.length)},
                {"pow", p.pow}};
}

SumPoch sum_poch_from_json(const Json &j)
{
    SumPoch p;
    p.coeff = rational_or(j, "c", 1);
    p.arg_exp = rational_or(j, "e", 1);
    p.step = rational_or(j, "s", 1);
    p.length = affine_from_json(field(j, "len"));
    p.pow = j.value("pow", std::int64_t{1});
    return p;
}

Json to_json(const SumSpec &s)
{
    Json idx = Json::array();
    for (const auto &i : s.indices) {
        idx.push_back(Json{{"name", i.name},
                           {"lo", optional_to_json(i.range.lo)},
                           {"hi", optional_to_json(i.range.hi)},
                           {"ratio", rational_to_json(i.ratio)}});
    }
    Json weight = Json::array();
    for (const auto &w : s.weight) {
        weight.push_back(to_json(w));
    }
    Json num = Json::array();
    for (const auto &p : s.num) {
        num.push_back(to_json(p));
    }
    Json den = Json::array();
    for (const auto &p : s.den) {
        den.push_back(to_json(p));
    }
    return Json{{"op", "sum"},   {"indices", idx}, {"quad", to_json(s.quad)}, {"lin", to_json(s.lin)},
                {"const", rational_to_json(s.constant)}, {"weight", weight}, {"num", num}, {"den", den}};
}

SumSpec sum_from_json(const Json &j)
{
    SumSpec s;
    for (const auto &i : field(j, "indices")) {
        SumIndex ix;
        ix.name = i.value("name", std::string("n") + std::to_string(s.indices.size()));
        ix.range.lo = optional_int(i, "lo", 0);
        ix.range.hi = optional_int(i, "hi", std::nullopt);
        ix.ratio = rational_or(i, "ratio", 1);
        s.indices.push_back(std::move(ix));
    }
    s.quad = matrix_from_json(field(j, "quad"));
    s.lin = vector_from_json(field(j, "lin"));
    s.constant = rational_or(j, "const", 0);
    if (j.contains("weight")) {
        for (const auto &w : j.at("weight")) {
            s.weight.push_back(affine_from_json(w));
        }
    }
    for (const char *key : {"num", "den"}) {
        if (!j.contains(key)) {
            continue;
        }
        auto &list = std::string(key) == "num" ? s.num : s.den;
        for (const auto &p : j.at(key)) {
            list.push_back(sum_poch_from_json(p));
        }
    }
    return s;
}

Json args_to_json(const char *op, const std::vector<ExprPtr> &args)
{
    Json a = Json::array();
    for (const auto &x : args) {
        a.push_back(to_json(*x));
    }
    return Json{{"op", op}, {"args", a}};
}

std::vector<ExprPtr> args_from_json(const Json &j)
{
    std::vector<ExprPtr> out;
    for (const auto &x : field(j, "args")) {
        out.push_back(expr_from_json(x));
    }
    return out;
}

} // namespace

Json rational_to_json(const Rational &r)
{
    return to_string(r);
}

Rational rational_from_json(const Json &j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    throw Error("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

Json to_json(const QExp &s)
{
    Json coeffs = Json::array();
    for (const auto &c : s.coeffs()) {
        coeffs.push_back(rational_to_json(c));
    }
    return Json{{"denom", s.denom()},
                {"lo", s.lo()},
                {"order", s.order() ? rational_to_json(*s.order()) : Json("inf")},
                {"coeffs", coeffs}};
}

QExp qexp_from_json(const Json &j)
{
    const auto denom = field(j, "denom").get<std::int64_t>();
    const auto lo = field(j, "lo").get<std::int64_t>();
    std::optional<Rational> order;
    const auto &o = field(j, "order");
    if (!(o.is_string() && o.get<std::string>() == "inf")) {
        order = rational_from_json(o);
    }
    std::vector<Rational> coeffs;
    for (const auto &c : field(j, "coeffs")) {
        coeffs.push_back(rational_from_json(c));
    }
    return QExp::from_coeffs(denom, lo, std::move(coeffs), order);
}

Json to_json(const EtaQuotient &e)
{
    Json exps = Json::object();
    for (const auto &[m, k] : e.exps) {
        exps[to_string(m)] = k;
    }
    return Json{{"scalar", rational_to_json(e.scalar)}, {"vshift", rational_to_json(e.vshift)}, {"exps", exps}};
}

EtaQuotient eta_from_json(const Json &j)
{
    std::map<Rational, std::int64_t> exps;
    if (j.contains("exps")) {
        for (const auto &[k, v] : j.at("exps").items()) {
            exps[parse_rational(k)] += v.get<std::int64_t>();
        }
    }
    const Rational scalar = rational_or(j, "scalar", 1);
    const Rational vshift = rational_or(j, "vshift", 0);
    if (j.value("eta", false)) {
        return EtaQuotient::from_eta(scalar, vshift, exps);
    }
    return make_eta_quotient(scalar, vshift, exps);
}

Json to_json(const RatMatrix &m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            row.push_back(rational_to_json(m(i, k)));
        }
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const RatVector &v)
{
    Json out = Json::array();
    for (const auto &x : v) {
        out.push_back(rational_to_json(x));
    }
    return out;
}

RatMatrix matrix_from_json(const Json &j)
{
    if (!j.is_array()) {
        throw Error("matrix must be an array of rows");
    }
    const auto rows = j.size();
    const auto cols = rows == 0 ? 0 : j.at(0).size();
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols) {
            throw Error("matrix rows must all have the same length");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            m(i, k) = rational_from_json(j.at(i).at(k));
        }
    }
    return m;
}

RatVector vector_from_json(const Json &j)
{
    if (!j.is_array()) {
        throw Error("vector must be an array");
    }
    RatVector v;
    for (const auto &x : j) {
        v.push_back(rational_from_json(x));
    }
    return v;
}

Json to_json(const ModularTriple &t)
{
    return Json{{"A", to_json(t.A)}, {"B", to_json(t.B)}, {"C", rational_to_json(t.C)}};
}

Json to_json(const ModularQuadruple &q)
{
    return Json{{"A", to_json(q.A)}, {"B", to_json(q.B)}, {"C", rational_to_json(q.C)}, {"D", q.D}};
}

ModularQuadruple quadruple_from_json(const Json &j)
{
    ModularQuadruple q;
    q.A = matrix_from_json(field(j, "A"));
    q.B = vector_from_json(field(j, "B"));
    q.C = rational_or(j, "C", 0);
    if (j.contains("D")) {
        for (const auto &d : j.at("D")) {
            if (!d.is_number_integer()) {
                throw Error("D entries must be integers");
            }
            q.D.push_back(d.get<std::int64_t>());
        }
    } else {
        q.D.assign(q.B.size(), 1);
    }
    if (q.A.rows() != q.B.size() || q.A.cols() != q.B.size() || q.D.size() != q.B.size()) {
        throw Error("A, B and D dimensions disagree");
    }
    return q;
}

bool is_plain_triple(const Json &j)
{
    if (!j.contains("D")) {
        return true;
    }
    for (const auto &d : j.at("D")) {
        if (d != 1) {
            return false;
        }
    }
    return true;
}

Json to_json(const PochSpec &p)
{
    return Json{{"op", "poch"},
                {"c", rational_to_json(p.coeff)},
                {"e", rational_to_json(p.arg_exp)},
                {"s", rational_to_json(p.step)},
                {"n", optional_to_json(p.length)}};
}

PochSpec poch_from_json(const Json &j)
{
    PochSpec p;
    p.coeff = rational_or(j, "c", 1);
    p.arg_exp = rational_or(j, "e", 1);
    p.step = rational_or(j, "s", 1);
    p.length = optional_int(j, "n", std::nullopt);
    if (p.step <= 0) {
        throw Error("Pochhammer step must be positive");
    }
    return p;
}

Json to_json(const Expr &e)
{
    return std::visit(
        overloaded{
            [](const ScalarNode &n) { return Json{{"op", "scalar"}, {"value", rational_to_json(n.value)}}; },
            [](const QPowNode &n) { return Json{{"op", "qpow"}, {"exp", rational_to_json(n.exponent)}}; },
            [](const PochNode &n) { return to_json(n.spec); },
            [](const NahmRef &n) {
                Json j = to_json(n.quadruple);
                j["op"] = "nahm";
                if (n.spec) {
                    j["spec"] = to_json(*n.spec);
                }
                if (n.dual) {
                    j["dual"] = true;
                }
                return j;
            },
            [](const SumSpec &n) { return to_json(n); },
            [](const MulNode &n) { return args_to_json("mul", n.args); },
            [](const AddNode &n) { return args_to_json("add", n.args); },
            [](const NegNode &n) { return Json{{"op", "neg"}, {"arg", to_json(*n.arg)}}; },
            [](const InvNode &n) { return Json{{"op", "inv"}, {"arg", to_json(*n.arg)}}; },
            [](const RescaleNode &n) {
                return Json{{"op", "rescale"}, {"factor", rational_to_json(n.factor)}, {"arg", to_json(*n.arg)}};
            },
            [](const ThetaNode &n) {
                return Json{{"op", "theta"}, {"kind", n.kind == ThetaKind::phi ? "phi" : "psi"}, {"negate", n.negate}};
            },
            [](const EtaNode &n) {
                Json j = to_json(n.quotient);
                j["op"] = "eta";
                return j;
            },
        },
        e.node);
}

ExprPtr expr_from_json(const Json &j)
{
    const auto op = field(j, "op").get<std::string>();
    if (op == "scalar") {
        return scalar(rational_from_json(field(j, "value")));
    }
    if (op == "qpow") {
        return qpow(rational_from_json(field(j, "exp")));
    }
    if (op == "poch") {
        return poch_expr(poch_from_json(j));
    }
    if (op == "nahm") {
        NahmRef ref{quadruple_from_json(j), std::nullopt, j.value("dual", false)};
        if (j.contains("spec")) {
            ref.spec = vector_from_json(j.at("spec"));
        }
        return nahm_ref(std::move(ref));
    }
    if (op == "sum") {
        return sum_expr(sum_from_json(j));
    }
    if (op == "mul") {
        return mul(args_from_json(j));
    }
    if (op == "add") {
        return add(args_from_json(j));
    }
    if (op == "neg") {
        return neg(expr_from_json(field(j, "arg")));
    }
    if (op == "inv") {
        return inv(expr_from_json(field(j, "arg")));
    }
    if (op == "rescale") {
        return rescale_expr(expr_from_json(field(j, "arg")), rational_from_json(field(j, "factor")));
    }
    if (op == "theta") {
        const auto kind = field(j, "kind").get<std::string>();
        if (kind != "phi" && kind != "psi") {
            throw Error("theta kind must be phi or psi");
        }
        return theta(kind == "phi" ? ThetaKind::phi : ThetaKind::psi, j.value("negate", false));
    }
    if (op == "eta") {
        return eta(eta_from_json(j));
    }
    throw Error("unknown expression op '" + op + "'");
}

} // namespace qseries

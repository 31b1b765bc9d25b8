#include <qseries/eta_fit.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace qseries
{

namespace
{

// sigma_1(k) / k
Rational divisor_ratio(std::int64_t k)
{
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= k; ++d) {
        if (k % d == 0) {
            s += d;
            if (d * d != k) {
                s += k / d;
            }
        }
    }
    return ratio(s, k);
}

// Coefficient of q^x in log (q^m; q^m)_inf.
Rational log_eta_coeff(const Rational &m, const Rational &x)
{
    const Rational k = x / m;
    if (!is_integral(k) || k <= 0) {
        return 0;
    }
    return -divisor_ratio(to_int64(k));
}

std::int64_t lcm_denoms(std::int64_t d, const std::vector<Rational> &moduli)
{
    for (const auto &m : moduli) {
        d = std::lcm(d, to_int64(Rational(m.get_den())));
    }
    return d;
}

} // namespace

std::vector<Rational> default_moduli(const QExp &f)
{
    std::vector<Rational> out{1, 2, 3, 4, 6, 12};
    if (!f.is_zero()) {
        const auto v = *f.valuation();
        if (f.shifted(-v).denom() % 2 == 0) {
            out.insert(out.begin(), ratio(1, 2));
        }
    }
    return out;
}

EtaFit fit_eta(const QExp &f, const std::vector<Rational> &moduli_in, const Rational &t)
{
    if (f.is_zero()) {
        throw Error("fit_eta: the series is zero");
    }
    std::set<Rational> unique;
    for (const auto &m : moduli_in) {
        if (m <= 0) {
            throw Error("fit_eta: moduli must be positive");
        }
        unique.insert(m);
    }
    const std::vector<Rational> moduli(unique.begin(), unique.end());
    const Rational order = f.order() ? std::min(t, *f.order()) : t;
    const Rational scalar = f.leading_coeff();
    const Rational v = *f.valuation();
    if (v > order) {
        throw Error("fit_eta: the series has no known terms up to the requested order");
    }
    const Rational span = order - v;
    const QExp g = f.truncated(order).shifted(-v).scaled(1 / scalar);
    const auto lattice = lcm_denoms(g.denom(), moduli);
    const auto usable = to_int64(floor(span * lattice));
    if (usable < static_cast<std::int64_t>(moduli.size()) + 5 || (!moduli.empty() && moduli.back() > span)) {
        throw Error("fit_eta: order " + to_string(order) + " leaves too few coefficients for " +
                    std::to_string(moduli.size()) + " moduli");
    }
    const QExp lg = log_series(g, span);

    EtaFit out;
    std::map<Rational, std::int64_t> exps;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const Rational &m = moduli[i];
        Rational rest = lg.coeff(m);
        for (std::size_t j = 0; j < i; ++j) {
            const auto it = exps.find(moduli[j]);
            if (it != exps.end()) {
                rest -= it->second * log_eta_coeff(moduli[j], m);
            }
        }
        // The diagonal entry is log_eta_coeff(m, m) = -1.
        const Rational e = -rest;
        if (!is_integral(e)) {
            out.residual = v + m;
            return out;
        }
        if (e != 0) {
            exps[m] = to_int64(e);
        }
    }
    const EtaQuotient q = make_eta_quotient(scalar, v, exps);
    const auto cmp = equal_to(f, eta_expand(q, order), order);
    if (!cmp.equal()) {
        out.residual = cmp.difference->exponent;
        return out;
    }
    out.quotient = q;
    return out;
}

bool Classification::distinct_weights() const
{
    std::set<Rational> w;
    for (const auto &t : terms) {
        w.insert(t.weight);
    }
    return w.size() > 1;
}

std::string to_string(Classification::Kind k)
{
    switch (k) {
    case Classification::Kind::single_quotient:
        return "single-quotient";
    case Classification::Kind::mixed_weights:
        return "mixed-weights";
    case Classification::Kind::unrecognized:
        return "unrecognized";
    }
    return "?";
}

Classification classify(const std::vector<std::pair<Rational, QExp>> &terms, const std::vector<Rational> &moduli,
                        const Rational &t)
{
    if (terms.empty()) {
        throw Error("classify: no terms");
    }
    Classification out;
    QExp total;
    for (const auto &[c, f] : terms) {
        total = total + f.scaled(c);
    }
    total = total.truncated(t);
    if (!total.is_zero()) {
        const auto whole = fit_eta(total, moduli, t);
        if (whole.found()) {
            out.kind = Classification::Kind::single_quotient;
            out.single = whole.quotient;
            return out;
        }
        out.residual = whole.residual;
    }
    for (const auto &[c, f] : terms) {
        if (c == 0 || f.is_zero()) {
            continue;
        }
        const auto fit = fit_eta(f, moduli, t);
        if (!fit.found()) {
            out.kind = Classification::Kind::unrecognized;
            out.terms.clear();
            out.residual = fit.residual;
            return out;
        }
        EtaQuotient q = *fit.quotient;
        q.scalar *= c;
        out.terms.push_back({q, weight(q)});
    }
    out.kind = Classification::Kind::mixed_weights;
    return out;
}

Json to_json(const EtaFit &fit)
{
    if (fit.found()) {
        Json j = to_json(*fit.quotient);
        j["weight"] = rational_to_json(weight(*fit.quotient));
        return Json{{"result", "quotient"}, {"quotient", j}};
    }
    return Json{{"result", "not-a-quotient"}, {"residual", rational_to_json(*fit.residual)}};
}

Json to_json(const Classification &c)
{
    Json j{{"kind", to_string(c.kind)}};
    if (c.single) {
        Json s = to_json(*c.single);
        s["weight"] = rational_to_json(weight(*c.single));
        j["quotient"] = s;
    }
    if (c.kind == Classification::Kind::mixed_weights) {
        Json terms = Json::array();
        for (const auto &t : c.terms) {
            Json q = to_json(t.quotient);
            q["weight"] = rational_to_json(t.weight);
            terms.push_back(q);
        }
        j["terms"] = terms;
        j["distinct_weights"] = c.distinct_weights();
    }
    if (c.residual) {
        j["residual"] = rational_to_json(*c.residual);
    }
    return j;
}

} // namespace qseries

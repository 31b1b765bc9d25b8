#include <qseries/bailey.hpp>

namespace qseries
{

namespace
{

QExp mono(const Rational &c, const Rational &e, const Rational &t)
{
    return QExp::monomial(c, e).truncated(t);
}

// 1 / (c q^e; q^s)_n for a product with nonzero constant term, valid to t.
QExp inv_poch(const Rational &c, const Rational &e, const Rational &s, std::int64_t n, const Rational &t)
{
    return invert(poch(poch_finite(c, e, s, n), t), t);
}

// a * b valid to t when b has valuation 0: b is evaluated far enough that the
// negative part of a cannot eat into the horizon.
template <class F>
QExp times_unit(const QExp &a, F &&b, const Rational &t)
{
    const Rational v = a.is_zero() ? Rational(0) : a.valuation_bound();
    return (a * b(t - std::min(v, Rational(0)))).truncated(t);
}

Rational a_step(const BaileyPair &p)
{
    // exponent of a*p relative to q
    return p.a_class == AClass::one ? p.scale : 2 * p.scale;
}

// Sum of the negative factor exponents of a finite Pochhammer: a lower bound on its valuation.
Rational negative_part(const PochSpec &spec)
{
    Rational out = 0;
    for (std::int64_t k = 0; k < spec.length.value_or(0); ++k) {
        const Rational e = spec.arg_exp + spec.step * k;
        if (e < 0) {
            out += e;
        }
    }
    return out;
}

void require_poch(const PochSpec &spec, const std::string &label)
{
    if (poch_vanishes(spec)) {
        throw Error("vanishing factor in " + label + " at this specialization");
    }
}

} // namespace

BuiltinPair parse_builtin_pair(const std::string &name)
{
    if (name == "BP1") {
        return BuiltinPair::bp1;
    }
    if (name == "BP2") {
        return BuiltinPair::bp2;
    }
    if (name == "BP3") {
        return BuiltinPair::bp3;
    }
    if (name == "BP4") {
        return BuiltinPair::bp4;
    }
    throw Error("unknown Bailey pair '" + name + "'");
}

std::string to_string(BuiltinPair p)
{
    switch (p) {
    case BuiltinPair::bp1:
        return "BP1";
    case BuiltinPair::bp2:
        return "BP2";
    case BuiltinPair::bp3:
        return "BP3";
    case BuiltinPair::bp4:
        return "BP4";
    }
    return "?";
}

BaileyPair builtin_pair(BuiltinPair which, const Rational &scale)
{
    if (scale <= 0) {
        throw Error("Bailey pair scale must be positive");
    }
    const Rational s = scale;
    const Rational half = ratio(1, 2);
    BaileyPair p;
    p.name = to_string(which);
    p.scale = s;
    switch (which) {
    case BuiltinPair::bp1:
        p.a_class = AClass::one;
        p.alpha = [s](std::int64_t n, const Rational &t) {
            if (n == 0) {
                return mono(1, 0, t);
            }
            return mono(2 * n + 1, s * ratio(n * (n - 1), 2), t) - mono(2 * n - 1, s * ratio(n * (n + 1), 2), t);
        };
        p.beta = [s](std::int64_t n, const Rational &t) {
            const QExp num = poch(poch_finite(-1, 0, s, n), t);
            return (num * num * inv_poch(1, s, s, 2 * n, t)).truncated(t);
        };
        break;
    case BuiltinPair::bp2:
        p.a_class = AClass::one;
        p.alpha = [s](std::int64_t n, const Rational &t) {
            if (n == 0) {
                return mono(1, 0, t);
            }
            return mono(2 * n + 1, s * ratio(n * (n + 1), 2), t) - mono(2 * n - 1, s * ratio(n * (n - 1), 2), t);
        };
        p.beta = [s](std::int64_t n, const Rational &t) {
            const QExp num = poch(poch_finite(-1, 0, s, n), t);
            return (num * num * inv_poch(1, s, s, 2 * n, t)).shifted(s * n).truncated(t);
        };
        break;
    case BuiltinPair::bp3:
        p.a_class = AClass::q;
        p.alpha = [s](std::int64_t n, const Rational &t) {
            return mono(n + 1, s * ratio(n * n, 2), t) - mono(n, s * ratio((n + 1) * (n + 1), 2), t);
        };
        p.beta = [s, half](std::int64_t n, const Rational &t) {
            const QExp num = poch(poch_finite(-1, s * half, s, n), t);
            return (num * num * inv_poch(1, 2 * s, s, 2 * n, t)).truncated(t);
        };
        break;
    case BuiltinPair::bp4:
        p.a_class = AClass::q;
        p.alpha = [s](std::int64_t n, const Rational &t) {
            return mono(n + 1, s * ratio((n + 1) * (n + 1), 2), t) - mono(n, s * ratio(n * n, 2), t);
        };
        p.beta = [s, half](std::int64_t n, const Rational &t) {
            const Rational shift = s * (n + half);
            if (shift > t) {
                return QExp::zero_to(t);
            }
            const Rational inner = t - shift;
            const QExp num = poch(poch_finite(-1, s * half, s, n), inner);
            return (num * num * inv_poch(1, 2 * s, s, 2 * n, inner)).shifted(shift).truncated(t);
        };
        break;
    }
    return p;
}

CheckResult verify_pair(const BaileyPair &p, std::int64_t n_max, const Rational &t)
{
    if (n_max < 0) {
        throw Error("verify_pair: n_max must be nonnegative");
    }
    const Rational ap = a_step(p);
    CheckResult result;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        const QExp lhs = p.beta(n, t);
        QExp rhs = QExp::zero_to(t);
        for (std::int64_t k = 0; k <= n; ++k) {
            const QExp a = p.alpha(k, t);
            rhs = rhs + times_unit(
                            a,
                            [&](const Rational &u) {
                                return inv_poch(1, p.scale, p.scale, n - k, u) * inv_poch(1, ap, p.scale, n + k, u);
                            },
                            t);
        }
        ++result.checked;
        const auto cmp = equal_to(lhs, rhs, t);
        if (!cmp.equal()) {
            result.index = n;
            result.difference = cmp.difference;
            return result;
        }
    }
    return result;
}

CheckResult finite_identity_check(FiniteIdentity which, const Rational &x_exp, std::int64_t n_max, const Rational &t)
{
    return finite_identity_check(which, 1, x_exp, n_max, t);
}

CheckResult finite_identity_check(FiniteIdentity which, const Rational &x_coeff, const Rational &x_exp,
                                  std::int64_t n_max, const Rational &t)
{
    if (x_coeff == 0) {
        throw Error("finite identity: x must be nonzero");
    }
    const Rational inv_c = 1 / x_coeff;
    const Rational half = ratio(1, 2);
    CheckResult result;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        QExp lhs;
        QExp rhs = QExp::zero_to(t);
        // x^k q^e as a monomial
        const auto xpow = [&](std::int64_t k, const Rational &e) {
            Rational c = 1;
            for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
                c *= k < 0 ? inv_c : x_coeff;
            }
            return QExp::monomial(c, e + x_exp * k);
        };
        if (which == FiniteIdentity::even) {
            const PochSpec f1{-inv_c, -x_exp, 1, n};
            const PochSpec f2{-x_coeff, x_exp + 1, 1, n};
            require_poch(f1, "(-1/x; q)_n");
            require_poch(f2, "(-xq; q)_n");
            const Rational lead = negative_part(f1) + negative_part(f2);
            const QExp num = poch(f1, t - lead) * poch(f2, t - lead);
            lhs = times_unit(num, [&](const Rational &u) { return inv_poch(1, 1, 1, 2 * n, u); }, t);
            const auto term = [&](const QExp &m, std::int64_t a, std::int64_t b) {
                return times_unit(
                    m, [&](const Rational &u) { return inv_poch(1, 1, 1, a, u) * inv_poch(1, 1, 1, b, u); }, t);
            };
            rhs = rhs + term(QExp::one(), n, n);
            for (std::int64_t r = 1; r <= n; ++r) {
                const QExp m = xpow(r, ratio(r * (r + 1), 2)) + xpow(-r, ratio(r * (r - 1), 2));
                rhs = rhs + term(m, n - r, n + r);
            }
        } else {
            const PochSpec f1{-inv_c, half - x_exp, 1, n};
            const PochSpec f2{-x_coeff, half + x_exp, 1, n + 1};
            require_poch(f1, "(-q^{1/2}/x; q)_n");
            require_poch(f2, "(-x q^{1/2}; q)_{n+1}");
            const Rational lead = negative_part(f1) + negative_part(f2);
            const QExp num = poch(f1, t - lead) * poch(f2, t - lead);
            lhs = times_unit(num, [&](const Rational &u) { return inv_poch(1, 2, 1, 2 * n, u); }, t);
            for (std::int64_t r = 0; r <= n; ++r) {
                const QExp m = xpow(-r, ratio(r * r, 2)) + xpow(r + 1, ratio((r + 1) * (r + 1), 2));
                rhs = rhs + times_unit(
                                m,
                                [&](const Rational &u) { return inv_poch(1, 1, 1, n - r, u) * inv_poch(1, 2, 1, n + r, u); },
                                t);
            }
        }
        ++result.checked;
        const auto cmp = equal_to(lhs, rhs, t);
        if (!cmp.equal()) {
            result.index = n;
            result.difference = cmp.difference;
            return result;
        }
    }
    return result;
}

Transform parse_transform(const std::string &name)
{
    if (name == "TBL") {
        return Transform::tbl;
    }
    if (name == "S2BL") {
        return Transform::s2bl;
    }
    if (name == "T128") {
        return Transform::t128;
    }
    throw Error("unknown transform '" + name + "'");
}

std::string to_string(Transform t)
{
    switch (t) {
    case Transform::tbl:
        return "TBL";
    case Transform::s2bl:
        return "S2BL";
    case Transform::t128:
        return "T128";
    }
    return "?";
}

SeriesPair apply_transform(const BaileyPair &p, Transform which, const Rational &t)
{
    // Both sides are sum_n weight(n) * beta_n and prefactor * sum_r weight'(r) * alpha_r;
    // every weight here is q^{quadratic} times a unit Pochhammer.
    std::function<Rational(std::int64_t)> beta_exp;
    std::function<QExp(std::int64_t, const Rational &)> beta_unit;
    std::function<Rational(std::int64_t)> alpha_exp;
    QExp prefactor;
    switch (which) {
    case Transform::tbl:
        if (p.a_class != AClass::one || p.scale != 2) {
            throw Error("TBL requires a pair relative to a = 1 at base q^2");
        }
        beta_exp = [](std::int64_t n) { return Rational(n * n); };
        beta_unit = [](std::int64_t n, const Rational &u) { return poch(poch_finite(-1, 1, 2, n), u); };
        alpha_exp = [](std::int64_t r) { return Rational(r * r); };
        prefactor = invert(negate_q(theta_psi(t)), t);
        break;
    case Transform::s2bl:
        if (p.a_class != AClass::q || p.scale != 1) {
            throw Error("S2BL requires a pair relative to a = q at base q");
        }
        beta_exp = [](std::int64_t n) { return ratio(n * (n + 1), 2); };
        beta_unit = [](std::int64_t n, const Rational &u) { return poch(poch_finite(-1, 1, 1, n), u); };
        alpha_exp = [](std::int64_t r) { return ratio(r * (r + 1), 2); };
        prefactor = (QExp::one() - QExp::monomial(1, 1)) * invert(negate_q(theta_phi(t)), t);
        break;
    case Transform::t128: {
        const Rational s = p.scale;
        const Rational extra = p.a_class == AClass::one ? Rational(0) : s;
        beta_exp = [s, extra](std::int64_t n) -> Rational { return s * n * n + extra * n; };
        beta_unit = [](std::int64_t, const Rational &u) { return QExp::one().truncated(u); };
        alpha_exp = beta_exp;
        prefactor = invert(poch(poch_infinite(1, a_step(p), s), t), t);
        break;
    }
    }
    SeriesPair out;
    out.lhs = QExp::zero_to(t);
    for (std::int64_t n = 0; beta_exp(n) <= t; ++n) {
        const Rational e = beta_exp(n);
        const Rational inner = t - e;
        out.lhs = out.lhs + (beta_unit(n, inner) * p.beta(n, inner)).truncated(inner).shifted(e);
    }
    QExp sum = QExp::zero_to(t);
    for (std::int64_t r = 0; alpha_exp(r) <= t; ++r) {
        const Rational e = alpha_exp(r);
        sum = sum + p.alpha(r, t - e).shifted(e);
    }
    out.rhs = (prefactor * sum).truncated(t);
    return out;
}

} // namespace qseries

#include <qseries/products.hpp>

#include <sstream>
#include <vector>

namespace qseries
{

namespace
{

void check_step(const PochSpec &spec)
{
    if (sgn(spec.step) <= 0) {
        throw Error("Pochhammer step must be positive");
    }
}

// Factor exponents e + k s that matter for a truncation at t, and the valuation
// contributed by the (finitely many) negative ones.
struct FactorPlan
{
    std::vector<Rational> exponents;
    Rational negative_sum = 0;
};

FactorPlan plan_factors(const PochSpec &spec, const Rational &t)
{
    FactorPlan plan;
    // All factors with a negative exponent are kept; they shift the valuation.
    for (std::int64_t k = 0;; ++k) {
        if (spec.length && k >= *spec.length) {
            break;
        }
        const Rational x = spec.arg_exp + spec.step * k;
        if (sgn(x) >= 0) {
            break;
        }
        plan.negative_sum += x;
    }
    const Rational cutoff = t - plan.negative_sum;
    for (std::int64_t k = 0;; ++k) {
        if (spec.length && k >= *spec.length) {
            break;
        }
        const Rational x = spec.arg_exp + spec.step * k;
        if (x > cutoff) {
            break;
        }
        plan.exponents.push_back(x);
    }
    return plan;
}

} // namespace

bool poch_vanishes(const PochSpec &spec)
{
    if (spec.coeff != 1 || sgn(spec.arg_exp) > 0) {
        return false;
    }
    check_step(spec);
    // 1 - q^{e + k s} vanishes when e + k s = 0 for some admissible k.
    const Rational k = -spec.arg_exp / spec.step;
    if (!is_integral(k)) {
        return false;
    }
    return !spec.length || k < *spec.length;
}

QExp poch(const PochSpec &spec, const Rational &t)
{
    check_step(spec);
    if (spec.length && *spec.length < 0) {
        throw Error("negative Pochhammer length");
    }
    if (spec.length && *spec.length == 0) {
        return QExp::one();
    }
    if (poch_vanishes(spec)) {
        return QExp();
    }
    const FactorPlan plan = plan_factors(spec, t);
    const auto lattice =
        lcm64(to_int64(Integer(spec.arg_exp.get_den())), to_int64(Integer(spec.step.get_den())));
    // Dense product on numerators over the lattice; remaining_neg tracks the valuation
    // still to come so intermediate truncation never loses a term that matters.
    std::int64_t lo = 0;
    std::vector<Rational> p{Rational(1)};
    Rational remaining_neg = plan.negative_sum;
    Rational prod;
    for (const auto &x : plan.exponents) {
        const auto xnum = to_int64(Rational(x * lattice));
        if (sgn(x) < 0) {
            remaining_neg -= x;
        }
        const auto top = to_int64(floor((t - remaining_neg) * lattice));
        const auto new_lo = std::min(lo, lo + xnum);
        auto new_hi = std::max(lo + static_cast<std::int64_t>(p.size()) - 1,
                               lo + static_cast<std::int64_t>(p.size()) - 1 + xnum);
        new_hi = std::min(new_hi, top);
        if (new_hi < new_lo) {
            p.clear();
            lo = 0;
            break;
        }
        std::vector<Rational> next(static_cast<std::size_t>(new_hi - new_lo + 1));
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto idx = lo + static_cast<std::int64_t>(i);
            if (sgn(p[i]) == 0) {
                continue;
            }
            if (idx <= new_hi) {
                next[static_cast<std::size_t>(idx - new_lo)] += p[i];
            }
            if (idx + xnum <= new_hi) {
                mpq_mul(prod.get_mpq_t(), p[i].get_mpq_t(), spec.coeff.get_mpq_t());
                next[static_cast<std::size_t>(idx + xnum - new_lo)] -= prod;
            }
        }
        p = std::move(next);
        lo = new_lo;
    }
    return QExp::from_coeffs(lattice, lo, std::move(p), t);
}

QExp theta_phi(const Rational &t)
{
    if (sgn(t) < 0) {
        return QExp::zero_to(t);
    }
    const auto nmax = to_int64(floor(t));
    std::vector<Rational> c(static_cast<std::size_t>(nmax + 1));
    for (std::int64_t n = 0; n * n <= nmax; ++n) {
        c[static_cast<std::size_t>(n * n)] += n == 0 ? 1 : 2;
    }
    return QExp::from_coeffs(1, 0, std::move(c), t);
}

QExp theta_psi(const Rational &t)
{
    if (sgn(t) < 0) {
        return QExp::zero_to(t);
    }
    const auto nmax = to_int64(floor(t));
    std::vector<Rational> c(static_cast<std::size_t>(nmax + 1));
    for (std::int64_t n = 0; n * (n + 1) / 2 <= nmax; ++n) {
        c[static_cast<std::size_t>(n * (n + 1) / 2)] += 1;
    }
    return QExp::from_coeffs(1, 0, std::move(c), t);
}

SeriesPair jacobi_triple(const Rational &z_coeff, const Rational &z_exp, const Rational &t)
{
    if (sgn(z_coeff) == 0) {
        throw Error("jacobi_triple: z = 0 makes q/z undefined");
    }
    const PochSpec factors[] = {
        poch_infinite(1, 1, 1),
        poch_infinite(z_coeff, z_exp, 1),
        poch_infinite(1 / z_coeff, 1 - z_exp, 1),
    };
    SeriesPair out;
    bool zero = false;
    Rational total_neg = 0;
    std::vector<Rational> neg(3);
    for (std::size_t i = 0; i < 3; ++i) {
        zero = zero || poch_vanishes(factors[i]);
        neg[i] = plan_factors(factors[i], t).negative_sum;
        total_neg += neg[i];
    }
    if (zero) {
        out.lhs = QExp::zero_to(t);
    } else {
        out.lhs = QExp::one();
        for (std::size_t i = 0; i < 3; ++i) {
            out.lhs = out.lhs * poch(factors[i], t - (total_neg - neg[i]));
        }
        out.lhs = out.lhs.truncated(t);
    }
    // Bilateral sum: the exponent n^2/2 + (a - 1/2) n is convex in n.
    QExp sum = QExp::zero_to(t);
    const auto term = [&](std::int64_t n) -> std::optional<QExp> {
        const Rational e = ratio(n * (n - 1), 2) + z_exp * n;
        if (e > t) {
            return std::nullopt;
        }
        Rational c = (n % 2 == 0) ? 1 : -1;
        Rational zpow = 1;
        const auto an = n < 0 ? -n : n;
        for (std::int64_t k = 0; k < an; ++k) {
            zpow *= z_coeff;
        }
        c *= n < 0 ? 1 / zpow : zpow;
        return QExp::monomial(c, e);
    };
    const auto vertex = to_int64(ceil(ratio(1, 2) - z_exp));
    for (std::int64_t n = vertex;; ++n) {
        auto tm = term(n);
        if (!tm) {
            break;
        }
        sum = sum + *tm;
    }
    for (std::int64_t n = vertex - 1;; --n) {
        auto tm = term(n);
        if (!tm) {
            break;
        }
        sum = sum + *tm;
    }
    out.rhs = sum;
    return out;
}

SeriesPair jacobi_cube(const Rational &t)
{
    SeriesPair out;
    out.lhs = power(poch(poch_infinite(1, 1, 1), t), 3, t);
    QExp sum = QExp::zero_to(t);
    for (std::int64_t n = 0; ratio(n * (n + 1), 2) <= t; ++n) {
        sum = sum + QExp::monomial((n % 2 == 0 ? 1 : -1) * (2 * n + 1), ratio(n * (n + 1), 2));
    }
    out.rhs = sum;
    return out;
}

EtaQuotient make_eta_quotient(Rational scalar, Rational vshift, const std::map<Rational, std::int64_t> &exps)
{
    EtaQuotient out;
    out.scalar = std::move(scalar);
    out.vshift = std::move(vshift);
    for (const auto &[m, e] : exps) {
        if (sgn(m) <= 0) {
            throw Error("eta quotient modulus must be positive, got " + to_string(m));
        }
        if (e != 0) {
            out.exps[m] = e;
        }
    }
    return out;
}

EtaQuotient EtaQuotient::from_eta(Rational scalar, Rational extra_shift, const std::map<Rational, std::int64_t> &exps)
{
    Rational shift = extra_shift;
    for (const auto &[m, e] : exps) {
        shift += m * e / 24;
    }
    return make_eta_quotient(std::move(scalar), shift, exps);
}

Rational EtaQuotient::eta_residual_shift() const
{
    Rational shift = vshift;
    for (const auto &[m, e] : exps) {
        shift -= m * e / 24;
    }
    return shift;
}

Rational EtaQuotient::weight() const
{
    Rational w = 0;
    for (const auto &[m, e] : exps) {
        w += e;
    }
    return w / 2;
}

Rational weight(const EtaQuotient &e)
{
    return e.weight();
}

QExp eta_expand(const EtaQuotient &e, const Rational &t)
{
    const Rational inner = t - e.vshift;
    QExp out = QExp::one();
    for (const auto &[m, k] : e.exps) {
        const QExp j = poch(poch_infinite(1, m, m), inner);
        out = out * power(j, k, inner);
    }
    return out.truncated(inner).shifted(e.vshift).scaled(e.scalar);
}

EtaQuotient combine(const EtaQuotient &a, const EtaQuotient &b)
{
    auto exps = a.exps;
    for (const auto &[m, k] : b.exps) {
        exps[m] += k;
    }
    return make_eta_quotient(a.scalar * b.scalar, a.vshift + b.vshift, exps);
}

std::string exps_string(const EtaQuotient &e)
{
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto &[m, k] : e.exps) {
        if (!first) {
            out << ", ";
        }
        first = false;
        out << to_string(m) << ":" << k;
    }
    out << "}";
    return out.str();
}

} // namespace qseries

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include <qseries/rational.hpp>
#include <qseries/series.hpp>

namespace qseries
{

// (coeff * q^arg_exp; q^step)_length; an empty length means the infinite product.
struct PochSpec
{
    Rational coeff = 1;
    Rational arg_exp = 1;
    Rational step = 1;
    std::optional<std::int64_t> length;

    friend bool operator==(const PochSpec &, const PochSpec &) = default;
};

inline PochSpec poch_finite(Rational c, Rational e, Rational s, std::int64_t n)
{
    return {std::move(c), std::move(e), std::move(s), n};
}

inline PochSpec poch_infinite(Rational c, Rational e, Rational s)
{
    return {std::move(c), std::move(e), std::move(s), std::nullopt};
}

// True if some factor 1 - c q^{e + k s} (k < length) is identically zero.
bool poch_vanishes(const PochSpec &spec);

// Expansion of the Pochhammer symbol truncated at t. Factors with negative exponents
// are allowed; they are finitely many because step > 0.
QExp poch(const PochSpec &spec, const Rational &t);

// Ramanujan's theta functions as sums: phi = sum_{n in Z} q^{n^2}, psi = sum_{n>=0} q^{n(n+1)/2}.
QExp theta_phi(const Rational &t);
QExp theta_psi(const Rational &t);

struct SeriesPair
{
    QExp lhs;
    QExp rhs;
};

// (q, z, q/z; q)_inf against sum_{n in Z} (-1)^n q^{n(n-1)/2} z^n at z = c q^a.
SeriesPair jacobi_triple(const Rational &z_coeff, const Rational &z_exp, const Rational &t);

// (q;q)_inf^3 against sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}.
SeriesPair jacobi_cube(const Rational &t);

// scalar * q^vshift * prod_m (q^m; q^m)_inf^{e_m}.
//
// Exponents are stored as pure Pochhammer powers J_m^{e_m}; the Dedekind-eta
// normalization q^{m e_m / 24} is folded into vshift by from_eta().
struct EtaQuotient
{
    Rational scalar = 1;
    Rational vshift = 0;
    std::map<Rational, std::int64_t> exps;

    static EtaQuotient from_eta(Rational scalar, Rational extra_shift, const std::map<Rational, std::int64_t> &exps);

    // vshift minus the eta normalization, i.e. the q-power left over when written with eta(m tau).
    Rational eta_residual_shift() const;
    Rational weight() const;

    friend bool operator==(const EtaQuotient &, const EtaQuotient &) = default;
};

// Drops zero exponents and validates the moduli.
EtaQuotient make_eta_quotient(Rational scalar, Rational vshift, const std::map<Rational, std::int64_t> &exps);

// (1/2) sum_m e_m.
Rational weight(const EtaQuotient &e);

QExp eta_expand(const EtaQuotient &e, const Rational &t);

// Pointwise product of two quotients: scalars multiply, shifts add, exponents add.
EtaQuotient combine(const EtaQuotient &a, const EtaQuotient &b);

// "{1:-3, 2:3}"
std::string exps_string(const EtaQuotient &e);

} // namespace qseries

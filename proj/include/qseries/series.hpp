#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <qseries/rational.hpp>

namespace qseries
{

// Truncated Laurent-Puiseux series in q with exact rational coefficients.
//
// Coefficient i multiplies q^{(lo + i)/denom}. Every stored exponent is <= order,
// and all coefficients up to order are exact; an empty order means the value is
// exact everywhere (a finite sum with nothing truncated).
//
// Canonical form: coefficients are empty or start and end with a nonzero entry,
// denom is the smallest lattice step carrying every nonzero exponent, and the
// zero series has denom 1 and lo 0.
class QExp
{
public:
    QExp() = default;

    static QExp monomial(const Rational &c, const Rational &e);
    static QExp constant(const Rational &c)
    {
        return monomial(c, 0);
    }
    static QExp one()
    {
        return constant(1);
    }
    // A zero series that is only known up to order.
    static QExp zero_to(const Rational &order);
    static QExp from_coeffs(std::int64_t denom, std::int64_t lo, std::vector<Rational> coeffs,
                            std::optional<Rational> order);

    std::int64_t denom() const
    {
        return denom_;
    }
    std::int64_t lo() const
    {
        return lo_;
    }
    const std::vector<Rational> &coeffs() const
    {
        return coeffs_;
    }
    const std::optional<Rational> &order() const
    {
        return order_;
    }
    bool is_exact() const
    {
        return !order_.has_value();
    }
    bool is_zero() const
    {
        return coeffs_.empty();
    }
    std::size_t term_count() const;

    // Exponent of the i-th stored slot.
    Rational exponent_at(std::size_t i) const
    {
        return ratio(lo_ + static_cast<std::int64_t>(i), denom_);
    }
    // Coefficient of q^e; zero off the lattice. Throws if e lies beyond order.
    Rational coeff(const Rational &e) const;

    // Lowest exponent carrying a nonzero coefficient; empty for the zero series.
    std::optional<Rational> valuation() const;
    // A lower bound on the true valuation: the valuation when nonzero, otherwise order.
    // Only meaningful for values that are not the exact zero series.
    Rational valuation_bound() const;
    Rational leading_coeff() const;

    // Lowers order to min(order, t) and drops stored terms beyond it.
    QExp truncated(const Rational &t) const;
    // Multiplies by q^e.
    QExp shifted(const Rational &e) const;
    QExp scaled(const Rational &c) const;

    friend bool operator==(const QExp &, const QExp &) = default;

private:
    void normalize();

    std::int64_t denom_ = 1;
    std::int64_t lo_ = 0;
    std::vector<Rational> coeffs_;
    std::optional<Rational> order_;
};

QExp operator+(const QExp &a, const QExp &b);
QExp operator-(const QExp &a, const QExp &b);
QExp operator-(const QExp &a);
QExp operator*(const QExp &a, const QExp &b);

QExp add(const QExp &a, const QExp &b);
QExp mul(const QExp &a, const QExp &b);
QExp neg(const QExp &a);

// Truncated order of a product: min(order_a + v_b, order_b + v_a).
std::optional<Rational> product_order(const QExp &a, const QExp &b);

// Multiplicative inverse valid up to min(t, order(a) - 2 v(a)).
QExp invert(const QExp &a, const Rational &t);
// Integer power; negative exponents invert first. Result is valid up to t.
QExp power(const QExp &a, std::int64_t n, const Rational &t);

// Formal logarithm of a series with constant term 1.
QExp log_series(const QExp &a, const Rational &t);
// Formal exponential of a series with zero constant term and positive valuation.
QExp exp_series(const QExp &a, const Rational &t);

// q -> q^s.
QExp rescale(const QExp &a, const Rational &s);
// q -> -q; defined on the integer lattice only.
QExp negate_q(const QExp &a);

struct Difference
{
    Rational exponent;
    Rational lhs;
    Rational rhs;
};

struct Comparison
{
    std::optional<Difference> difference;

    bool equal() const
    {
        return !difference.has_value();
    }
};

// Exact coefficientwise comparison for every exponent <= t.
Comparison equal_to(const QExp &a, const QExp &b, const Rational &t);

// Outcome of an indexed family of comparisons (one per n, per pair term, ...).
// index names the first failing member.
struct CheckResult
{
    std::optional<std::int64_t> index;
    std::optional<Difference> difference;
    std::size_t checked = 0;

    bool passed() const
    {
        return !difference.has_value();
    }
};

// Human-readable form, e.g. "1 - q^{1/2} + (1/2)q^3". The truncation marker
// " + O(q^{...})" is appended when with_order is set and the value is truncated.
std::string to_string(const QExp &a, bool with_order = false);
std::string exponent_string(const Rational &e);

} // namespace qseries

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qseries
{

using Integer = mpz_class;
using Rational = mpq_class;

// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Parses "p/q", "p" or "-p/q". Whitespace around the token is ignored.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational &r);

Integer floor(const Rational &r);
Integer ceil(const Rational &r);

std::int64_t to_int64(const Integer &z);
std::int64_t to_int64(const Rational &r); // requires an integral value

// p/q in lowest terms.
inline Rational ratio(std::int64_t p, std::int64_t q)
{
    Rational r{mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q))};
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rational &r)
{
    return r.get_den() == 1;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

} // namespace qseries

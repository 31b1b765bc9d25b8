#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <qseries/products.hpp>
#include <qseries/series.hpp>

namespace qseries
{

// Relative parameter a of a Bailey pair: a = 1 or a = q (at the pair's own base).
enum class AClass
{
    one,
    q,
};

// (alpha_n, beta_n) relative to a, instantiated at base q^scale. Terms are produced
// on demand, exact up to the requested order.
struct BaileyPair
{
    using Generator = std::function<QExp(std::int64_t n, const Rational &t)>;

    std::string name;
    AClass a_class = AClass::one;
    Rational scale = 1;
    Generator alpha;
    Generator beta;
};

enum class BuiltinPair
{
    bp1,
    bp2,
    bp3,
    bp4,
};

BuiltinPair parse_builtin_pair(const std::string &name);
std::string to_string(BuiltinPair p);

BaileyPair builtin_pair(BuiltinPair which, const Rational &scale = 1);

// beta_n = sum_{k<=n} alpha_k / ((p;p)_{n-k} (a p;p)_{n+k}) with p = q^scale, for n <= n_max.
CheckResult verify_pair(const BaileyPair &p, std::int64_t n_max, const Rational &t);

enum class FiniteIdentity
{
    even,
    odd,
};

// The finite x-identities behind the new pairs, at x = x_coeff * q^x_exp.
CheckResult finite_identity_check(FiniteIdentity which, const Rational &x_exp, std::int64_t n_max, const Rational &t);
CheckResult finite_identity_check(FiniteIdentity which, const Rational &x_coeff, const Rational &x_exp,
                                  std::int64_t n_max, const Rational &t);

enum class Transform
{
    tbl,  // a = 1 at base q^2
    s2bl, // a = q at base q
    t128, // any a in {1, q^s} at base q^s
};

Transform parse_transform(const std::string &name);
std::string to_string(Transform t);

SeriesPair apply_transform(const BaileyPair &p, Transform which, const Rational &t);

} // namespace qseries

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <qseries/json_io.hpp>
#include <qseries/products.hpp>
#include <qseries/series.hpp>

namespace qseries
{

struct EtaFit
{
    std::optional<EtaQuotient> quotient;
    // First exponent at which no quotient over the given moduli matches.
    std::optional<Rational> residual;

    bool found() const
    {
        return quotient.has_value();
    }
};

// Divisors of 12, plus 1/2 when f lives on a half-integral lattice.
std::vector<Rational> default_moduli(const QExp &f);

// Fits f = scalar q^v prod_m (q^m; q^m)_inf^{e_m} with integer e_m over the given moduli,
// using coefficients up to min(t, order of f). Every returned quotient has been
// re-expanded and compared with f up to that order. Throws when f is zero or the
// order leaves fewer than |moduli| + 5 usable coefficients.
EtaFit fit_eta(const QExp &f, const std::vector<Rational> &moduli, const Rational &t);

struct WeightedQuotient
{
    EtaQuotient quotient;
    Rational weight;
};

struct Classification
{
    enum class Kind
    {
        single_quotient,
        mixed_weights,
        unrecognized,
    };

    Kind kind = Kind::unrecognized;
    std::optional<EtaQuotient> single;
    std::vector<WeightedQuotient> terms;
    std::optional<Rational> residual;

    // At least two different weights among the terms.
    bool distinct_weights() const;
};

std::string to_string(Classification::Kind k);

// Tries the sum of c_i f_i as one quotient first, then each term on its own.
Classification classify(const std::vector<std::pair<Rational, QExp>> &terms, const std::vector<Rational> &moduli,
                        const Rational &t);

Json to_json(const EtaFit &fit);
Json to_json(const Classification &c);

} // namespace qseries

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <qseries/matrix.hpp>
#include <qseries/products.hpp>
#include <qseries/series.hpp>

namespace qseries
{

// Per-coordinate specialization exponents: u_i = q^{b_i} multiplies the summand by
// q^{b . n}, i.e. shifts the linear part.
using MonomialVector = RatVector;

// (A, B, C) with A symmetric positive definite.
struct ModularTriple
{
    RatMatrix A;
    RatVector B;
    Rational C = 0;

    std::size_t rank() const
    {
        return B.size();
    }
    void validate() const;

    friend bool operator==(const ModularTriple &, const ModularTriple &) = default;
};

// (A, B, C, D) with D = diag(d_i), d_i positive integers, and AD symmetric positive definite.
struct ModularQuadruple
{
    RatMatrix A;
    RatVector B;
    Rational C = 0;
    std::vector<std::int64_t> D;

    std::size_t rank() const
    {
        return B.size();
    }
    RatMatrix symmetrized() const; // AD
    void validate() const;

    static ModularQuadruple from_triple(const ModularTriple &t);

    friend bool operator==(const ModularQuadruple &, const ModularQuadruple &) = default;
};

struct NahmExpansion
{
    QExp series;
    std::size_t terms = 0;
    // No lattice point has exponent <= t; series is zero.
    bool below_minimum = false;
};

// sum_{n >= 0} q^{(1/2) n^T AD n + n^T (B + spec) + C} / prod_i (q^{d_i}; q^{d_i})_{n_i},
// exact for every exponent <= t.
NahmExpansion gnahm_expand_detailed(const ModularQuadruple &q, const Rational &t,
                                    const std::optional<MonomialVector> &spec = std::nullopt);
QExp gnahm_expand(const ModularQuadruple &q, const Rational &t,
                  const std::optional<MonomialVector> &spec = std::nullopt);
QExp nahm_expand(const ModularTriple &t3, const Rational &t,
                 const std::optional<MonomialVector> &spec = std::nullopt);

// (A^{-1}, A^{-1} B, B^T A^{-1} B / 2 - r/24 - C)
ModularTriple dual_triple(const ModularTriple &t);
// (A^{-1}, A^{-1} B, B^T (AD)^{-1} B / 2 - tr(D)/24 - C, D)
ModularQuadruple dual_quadruple(const ModularQuadruple &q);

// Rank-3 to rank-4 reindexing. The rank-3 sum over (i, j, k) with bases (q; q), (q^2; q^2),
// (q^2; q^2) and specialization b equals a rank-4 Nahm sum at q^2 with
// B = (b1/2 - 1/4, b1/2 + 1/4, b2/2, b3/2).
enum class ReindexSide
{
    identity, // quadratic part i^2/2 + j^2 + k^2 - ik - jk
    mizuno,   // quadratic part 3i^2/2 + 2j^2 + 4k^2 + 2ij + 4ik + 4jk
};

ModularQuadruple reindex_source(ReindexSide side);
ModularTriple reindex_target(ReindexSide side, const MonomialVector &b);

// lhs: the rank-3 sum evaluated at q; rhs: the rank-4 Nahm sum evaluated directly at q^2,
// i.e. as the generalized sum with D = 2I and linear part 2B.
SeriesPair reindex_rank4(const MonomialVector &b, ReindexSide side, const Rational &t);

// q^{n(n-1)/2} / (q;q)_n against sum_{i+j=n} q^{i^2+j^2-i} / ((q^2;q^2)_i (q^2;q^2)_j)
// for every n <= n_max.
CheckResult splitting_check(std::int64_t n_max, const Rational &t);

} // namespace qseries

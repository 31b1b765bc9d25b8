#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <qseries/matrix.hpp>

namespace qseries
{

// Summation range of one index; an empty bound is infinite.
struct IndexRange
{
    std::optional<std::int64_t> lo = 0;
    std::optional<std::int64_t> hi;

    friend bool operator==(const IndexRange &, const IndexRange &) = default;
};

// value(n) = (1/2) n^T quad n + lin . n + constant
struct QuadraticForm
{
    RatMatrix quad;
    RatVector lin;
    Rational constant = 0;

    Rational value(std::span<const std::int64_t> n) const;
};

// Enumerates every integer point of a box-restricted lattice on which a quadratic
// form is <= t.
//
// Floating point is used only to bound the search: per-coordinate ranges come from
// the ellipsoid of the trailing block (conditioned on the fixed prefix), widened by
// 10% plus 2. Each candidate is then accepted or rejected on its exact value.
// Trailing blocks that are not positive definite must be boxed in by finite ranges,
// except for the last coordinate, whose one-dimensional range is solved directly.
class LatticeEnumerator
{
public:
    using Visitor = std::function<void(std::span<const std::int64_t> point, std::int64_t scaled_value)>;

    LatticeEnumerator(QuadraticForm form, std::vector<IndexRange> ranges);

    std::size_t rank() const
    {
        return ranges_.size();
    }
    // value(n) - constant is always a multiple of 1/scale().
    std::int64_t scale() const
    {
        return scale_;
    }
    const QuadraticForm &form() const
    {
        return form_;
    }

    // Visits points in depth-first lexicographic order, so points sharing all but the
    // last coordinate arrive consecutively. scaled_value = (value(n) - constant) * scale().
    void for_each(const Rational &t, const Visitor &visit) const;

    // Number of points with value <= t.
    std::size_t count(const Rational &t) const;

private:
    struct Depth
    {
        bool posdef = false;
        std::vector<double> inv; // inverse of the trailing block, row-major
    };

    void descend(std::size_t depth, std::int64_t threshold, std::vector<std::int64_t> &point,
                 const Visitor &visit) const;
    std::int64_t scaled_value(std::span<const std::int64_t> point) const;

    QuadraticForm form_;
    std::vector<IndexRange> ranges_;
    std::int64_t scale_ = 1;
    // Integer form: value * scale = sum diag_i n_i^2 + sum_{i<j} off_ij n_i n_j + sum lin_i n_i.
    std::vector<std::int64_t> diag_;
    std::vector<std::int64_t> off_; // full symmetric, row-major; diagonal entries unused
    std::vector<std::int64_t> lin_;
    std::vector<double> quad_f_; // scaled full quadratic matrix M*Q
    std::vector<Depth> depths_;
};

} // namespace qseries

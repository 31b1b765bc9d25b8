#pragma once

#include <cstddef>
#include <vector>

#include <qseries/rational.hpp>

namespace qseries
{

using RatVector = std::vector<Rational>;

// Small dense row-major matrix of exact rationals.
class RatMatrix
{
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix diagonal(const RatVector &d);

    std::size_t rows() const
    {
        return rows_;
    }
    std::size_t cols() const
    {
        return cols_;
    }
    bool is_square() const
    {
        return rows_ == cols_;
    }

    Rational &operator()(std::size_t i, std::size_t j)
    {
        return data_[i * cols_ + j];
    }
    const Rational &operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * cols_ + j];
    }

    RatMatrix transpose() const;
    bool is_symmetric() const;

    friend bool operator==(const RatMatrix &, const RatMatrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RatMatrix operator*(const RatMatrix &a, const RatMatrix &b);
RatVector operator*(const RatMatrix &a, const RatVector &v);
Rational dot(const RatVector &a, const RatVector &b);

// Exact Gauss-Jordan inverse; throws on a singular matrix.
RatMatrix inverse(const RatMatrix &m);

// Leading principal minors via fraction-free (Bareiss) elimination on the matrix
// scaled to integers. Exact.
std::vector<Rational> leading_minors(const RatMatrix &m);

// True iff m is symmetric with all leading principal minors positive.
// Throws on non-symmetric input.
bool check_posdef(const RatMatrix &m);

} // namespace qseries

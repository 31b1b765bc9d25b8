#include <qseries/matrix.hpp>

namespace qseries
{

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw Error("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

RatMatrix RatMatrix::diagonal(const RatVector &d)
{
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        m(i, i) = d[i];
    }
    return m;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

bool RatMatrix::is_symmetric() const
{
    if (!is_square()) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) {
                return false;
            }
        }
    }
    return true;
}

RatMatrix operator*(const RatMatrix &a, const RatMatrix &b)
{
    if (a.cols() != b.rows()) {
        throw Error("matrix dimension mismatch");
    }
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return c;
}

RatVector operator*(const RatMatrix &a, const RatVector &v)
{
    if (a.cols() != v.size()) {
        throw Error("matrix-vector dimension mismatch");
    }
    RatVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i] += a(i, j) * v[j];
        }
    }
    return out;
}

Rational dot(const RatVector &a, const RatVector &b)
{
    if (a.size() != b.size()) {
        throw Error("vector dimension mismatch");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

RatMatrix inverse(const RatMatrix &m)
{
    if (!m.is_square()) {
        throw Error("inverse of non-square matrix");
    }
    const auto n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a(pivot, col)) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw Error("singular matrix");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || sgn(a(i, col)) == 0) {
                continue;
            }
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::vector<Rational> leading_minors(const RatMatrix &m)
{
    if (!m.is_square()) {
        throw Error("leading minors of non-square matrix");
    }
    const auto n = m.rows();
    // Scale to an integer matrix; minors of k x k blocks pick up scale^k.
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
        }
    }
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational scaled = m(i, j) * Rational(scale);
            a[i][j] = scaled.get_num();
        }
    }
    // Bareiss without pivoting: after step k, a[k][k] is the (k+1)-th leading minor
    // as long as all previous minors are nonzero.
    std::vector<Rational> minors;
    Integer prev = 1;
    Rational scale_pow = 1;
    for (std::size_t k = 0; k < n; ++k) {
        scale_pow *= Rational(scale);
        minors.push_back(Rational(a[k][k]) / scale_pow);
        if (a[k][k] == 0) {
            // Bareiss cannot continue past a zero pivot; evaluate the remaining minors directly.
            for (std::size_t r = k + 1; r < n; ++r) {
                RatMatrix sub(r + 1, r + 1);
                for (std::size_t i = 0; i <= r; ++i) {
                    for (std::size_t j = 0; j <= r; ++j) {
                        sub(i, j) = m(i, j);
                    }
                }
                Rational det = 1;
                for (std::size_t c = 0; c <= r; ++c) {
                    std::size_t p = c;
                    while (p <= r && sgn(sub(p, c)) == 0) {
                        ++p;
                    }
                    if (p > r) {
                        det = 0;
                        break;
                    }
                    if (p != c) {
                        for (std::size_t j = 0; j <= r; ++j) {
                            std::swap(sub(p, j), sub(c, j));
                        }
                        det = -det;
                    }
                    det *= sub(c, c);
                    for (std::size_t i = c + 1; i <= r; ++i) {
                        const Rational f = sub(i, c) / sub(c, c);
                        for (std::size_t j = c; j <= r; ++j) {
                            sub(i, j) -= f * sub(c, j);
                        }
                    }
                }
                minors.push_back(det);
            }
            return minors;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return minors;
}

bool check_posdef(const RatMatrix &m)
{
    if (!m.is_symmetric()) {
        throw Error("check_posdef: matrix is not symmetric");
    }
    for (const auto &minor : leading_minors(m)) {
        if (sgn(minor) <= 0) {
            return false;
        }
    }
    return true;
}

} // namespace qseries

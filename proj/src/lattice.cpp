#include <qseries/lattice.hpp>

#include <cmath>
#include <limits>

namespace qseries
{

namespace
{

std::int64_t checked(__int128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw Error("lattice exponent overflow");
    }
    return static_cast<std::int64_t>(v);
}

// Inverse of a small symmetric positive definite matrix in double precision.
std::vector<double> invert_double(std::vector<double> a, std::size_t n)
{
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        inv[i * n + i] = 1.0;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::fabs(a[r * n + c]) > std::fabs(a[p * n + c])) {
                p = r;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a[c * n + j], a[p * n + j]);
            std::swap(inv[c * n + j], inv[p * n + j]);
        }
        const double piv = a[c * n + c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c * n + j] /= piv;
            inv[c * n + j] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) {
                continue;
            }
            const double f = a[r * n + c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[c * n + j];
                inv[r * n + j] -= f * inv[c * n + j];
            }
        }
    }
    return inv;
}

// Widened search interval around a floating-point estimate.
std::pair<std::int64_t, std::int64_t> widen(double centre, double radius)
{
    const double r = radius * 1.1 + 2.0;
    const double lo = std::floor(centre - r);
    const double hi = std::ceil(centre + r);
    constexpr double lim = 1e15;
    if (!(lo > -lim) || !(hi < lim)) {
        throw Error("lattice search range too large");
    }
    return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

} // namespace

Rational QuadraticForm::value(std::span<const std::int64_t> n) const
{
    Rational v = constant;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] == 0) {
            continue;
        }
        v += lin[i] * n[i];
        v += quad(i, i) * n[i] * n[i] / 2;
        for (std::size_t j = i + 1; j < n.size(); ++j) {
            v += quad(i, j) * n[i] * n[j];
        }
    }
    return v;
}

LatticeEnumerator::LatticeEnumerator(QuadraticForm form, std::vector<IndexRange> ranges)
    : form_(std::move(form)), ranges_(std::move(ranges))
{
    const auto r = ranges_.size();
    if (form_.quad.rows() != r || form_.quad.cols() != r || form_.lin.size() != r) {
        throw Error("quadratic form dimension does not match index count");
    }
    if (!form_.quad.is_symmetric()) {
        throw Error("quadratic form matrix must be symmetric");
    }
    for (const auto &range : ranges_) {
        if (range.lo && range.hi && *range.lo > *range.hi) {
            throw Error("empty index range");
        }
    }
    Integer m = 1;
    const auto fold = [&](const Rational &x) { mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), x.get_den_mpz_t()); };
    for (std::size_t i = 0; i < r; ++i) {
        fold(form_.quad(i, i) / 2);
        fold(form_.lin[i]);
        for (std::size_t j = i + 1; j < r; ++j) {
            fold(form_.quad(i, j));
        }
    }
    scale_ = to_int64(m);
    const Rational ms(m);
    diag_.resize(r);
    lin_.resize(r);
    off_.assign(r * r, 0);
    quad_f_.resize(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        diag_[i] = to_int64(Rational(form_.quad(i, i) * ms / 2));
        lin_[i] = to_int64(Rational(form_.lin[i] * ms));
        for (std::size_t j = 0; j < r; ++j) {
            const Rational scaled = form_.quad(i, j) * ms;
            if (i != j) {
                off_[i * r + j] = to_int64(scaled);
            }
            quad_f_[i * r + j] = scaled.get_d();
        }
    }
    depths_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        const auto n = r - i;
        RatMatrix block(n, n);
        std::vector<double> block_f(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                block(a, b) = form_.quad(i + a, i + b);
                block_f[a * n + b] = quad_f_[(i + a) * r + (i + b)];
            }
        }
        depths_[i].posdef = check_posdef(block);
        if (depths_[i].posdef) {
            depths_[i].inv = invert_double(std::move(block_f), n);
        }
    }
}

std::int64_t LatticeEnumerator::scaled_value(std::span<const std::int64_t> point) const
{
    const auto r = point.size();
    __int128 v = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const __int128 ni = point[i];
        v += static_cast<__int128>(diag_[i]) * ni * ni + static_cast<__int128>(lin_[i]) * ni;
        for (std::size_t j = i + 1; j < r; ++j) {
            v += static_cast<__int128>(off_[i * r + j]) * ni * point[j];
        }
    }
    return checked(v);
}

void LatticeEnumerator::descend(std::size_t depth, std::int64_t threshold, std::vector<std::int64_t> &point,
                                const Visitor &visit) const
{
    const auto r = ranges_.size();
    const auto &range = ranges_[depth];
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    // Linear coefficient of the current coordinate given the fixed prefix, and the
    // prefix's own value (both scaled).
    __int128 b = lin_[depth];
    for (std::size_t j = 0; j < depth; ++j) {
        b += static_cast<__int128>(off_[depth * r + j]) * point[j];
    }
    const std::span<const std::int64_t> prefix(point.data(), depth);
    const std::int64_t prefix_value = scaled_value(prefix);

    if (depth + 1 == r) {
        const auto a = diag_[depth];
        const auto c = static_cast<__int128>(prefix_value) - threshold;
        if (a > 0) {
            const double disc = static_cast<double>(b) * static_cast<double>(b) - 4.0 * a * static_cast<double>(c);
            if (disc < 0.0) {
                // Widen slightly in case rounding hid a tangent point.
                if (disc < -1e-6 * (static_cast<double>(b) * static_cast<double>(b) + 1.0)) {
                    return;
                }
            }
            const double centre = -static_cast<double>(b) / (2.0 * a);
            const double radius = std::sqrt(std::max(disc, 0.0)) / (2.0 * a);
            std::tie(lo, hi) = widen(centre, radius);
        } else if (a == 0 && b > 0) {
            if (!range.lo) {
                throw Error("sum does not truncate: unbounded index with non-growing exponent");
            }
            lo = *range.lo;
            hi = checked(static_cast<__int128>(std::floor(static_cast<double>(-c) / static_cast<double>(b))) + 1);
        } else if (a == 0 && b < 0) {
            if (!range.hi) {
                throw Error("sum does not truncate: unbounded index with non-growing exponent");
            }
            hi = *range.hi;
            lo = checked(static_cast<__int128>(std::ceil(static_cast<double>(c) / static_cast<double>(-b))) - 1);
        } else {
            if (!range.lo || !range.hi) {
                throw Error("sum does not truncate: unbounded index with non-growing exponent");
            }
            lo = *range.lo;
            hi = *range.hi;
        }
    } else if (depths_[depth].posdef) {
        const auto n = r - depth;
        const auto &inv = depths_[depth].inv;
        std::vector<double> by(n);
        for (std::size_t a = 0; a < n; ++a) {
            double s = static_cast<double>(lin_[depth + a]);
            for (std::size_t j = 0; j < depth; ++j) {
                s += quad_f_[(depth + a) * r + j] * static_cast<double>(point[j]);
            }
            by[a] = s;
        }
        double quad_min = 0.0;
        double centre = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            double row = 0.0;
            for (std::size_t c2 = 0; c2 < n; ++c2) {
                row += inv[a * n + c2] * by[c2];
            }
            quad_min += by[a] * row;
            if (a == 0) {
                centre = -row;
            }
        }
        const double min_value = static_cast<double>(prefix_value) - 0.5 * quad_min;
        const double slack = static_cast<double>(threshold) - min_value;
        const double tol = 1e-9 * (std::fabs(static_cast<double>(threshold)) + std::fabs(min_value) + 1.0) + 1.0;
        if (slack < -tol) {
            return;
        }
        const double radius = std::sqrt(2.0 * std::max(slack, 0.0) * inv[0]);
        std::tie(lo, hi) = widen(centre, radius);
    } else {
        if (!range.lo || !range.hi) {
            throw Error("sum does not truncate: indefinite form on an unbounded index");
        }
        lo = *range.lo;
        hi = *range.hi;
    }
    if (range.lo) {
        lo = std::max(lo, *range.lo);
    }
    if (range.hi) {
        hi = std::min(hi, *range.hi);
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
        point[depth] = v;
        if (depth + 1 == r) {
            const auto value = scaled_value(point);
            if (value <= threshold) {
                visit(point, value);
            }
        } else {
            descend(depth + 1, threshold, point, visit);
        }
    }
    point[depth] = 0;
}

void LatticeEnumerator::for_each(const Rational &t, const Visitor &visit) const
{
    const Rational shifted = (t - form_.constant) * scale_;
    const Integer thr = floor(shifted);
    if (!thr.fits_slong_p()) {
        throw Error("truncation order out of range");
    }
    const auto threshold = static_cast<std::int64_t>(thr.get_si());
    std::vector<std::int64_t> point(ranges_.size(), 0);
    if (ranges_.empty()) {
        if (threshold >= 0) {
            visit(point, 0);
        }
        return;
    }
    descend(0, threshold, point, visit);
}

std::size_t LatticeEnumerator::count(const Rational &t) const
{
    std::size_t n = 0;
    for_each(t, [&](std::span<const std::int64_t>, std::int64_t) { ++n; });
    return n;
}

} // namespace qseries

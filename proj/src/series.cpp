#include <qseries/series.hpp>

#include <algorithm>
#include <sstream>

namespace qseries
{

namespace
{

// Order comparison where an empty optional means +infinity.
std::optional<Rational> min_order(const std::optional<Rational> &a, const std::optional<Rational> &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return *a < *b ? a : b;
}

// Coefficients of a on the finer lattice step 1/target (target a multiple of a.denom()).
struct Aligned
{
    std::int64_t lo = 0;
    std::int64_t stride = 1;
};

Aligned align(const QExp &a, std::int64_t target)
{
    const auto stride = target / a.denom();
    return {a.lo() * stride, stride};
}

// Largest lattice numerator n with n/denom <= order.
std::int64_t top_index(const Rational &order, std::int64_t denom)
{
    return to_int64(floor(order * denom));
}

} // namespace

QExp QExp::monomial(const Rational &c, const Rational &e)
{
    QExp out;
    if (c == 0) {
        return out;
    }
    out.denom_ = to_int64(Integer(e.get_den()));
    out.lo_ = to_int64(Integer(e.get_num()));
    out.coeffs_.push_back(c);
    return out;
}

QExp QExp::zero_to(const Rational &order)
{
    QExp out;
    out.order_ = order;
    return out;
}

QExp QExp::from_coeffs(std::int64_t denom, std::int64_t lo, std::vector<Rational> coeffs,
                       std::optional<Rational> order)
{
    if (denom <= 0) {
        throw Error("lattice denominator must be positive");
    }
    QExp out;
    out.denom_ = denom;
    out.lo_ = lo;
    out.coeffs_ = std::move(coeffs);
    out.order_ = std::move(order);
    out.normalize();
    return out;
}

void QExp::normalize()
{
    if (order_ && !coeffs_.empty()) {
        const auto top = top_index(*order_, denom_);
        if (top < lo_) {
            coeffs_.clear();
        } else if (static_cast<std::int64_t>(coeffs_.size()) > top - lo_ + 1) {
            coeffs_.resize(static_cast<std::size_t>(top - lo_ + 1));
        }
    }
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
        coeffs_.pop_back();
    }
    std::size_t first = 0;
    while (first < coeffs_.size() && sgn(coeffs_[first]) == 0) {
        ++first;
    }
    if (first == coeffs_.size()) {
        coeffs_.clear();
        denom_ = 1;
        lo_ = 0;
        return;
    }
    if (first > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
        lo_ += static_cast<std::int64_t>(first);
    }
    auto g = denom_;
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
        if (sgn(coeffs_[i]) != 0) {
            g = gcd64(g, lo_ + static_cast<std::int64_t>(i));
        }
    }
    if (g > 1) {
        std::vector<Rational> packed((coeffs_.size() - 1) / static_cast<std::size_t>(g) + 1);
        for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) {
            packed[i / static_cast<std::size_t>(g)] = std::move(coeffs_[i]);
        }
        coeffs_ = std::move(packed);
        lo_ /= g;
        denom_ /= g;
    }
}

std::size_t QExp::term_count() const
{
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                  [](const Rational &c) { return sgn(c) != 0; }));
}

Rational QExp::coeff(const Rational &e) const
{
    if (order_ && e > *order_) {
        throw Error("coefficient of q^" + to_string(e) + " requested beyond order " + to_string(*order_));
    }
    const Rational scaled = e * denom_;
    if (!is_integral(scaled)) {
        return 0;
    }
    const auto idx = to_int64(scaled) - lo_;
    if (idx < 0 || idx >= static_cast<std::int64_t>(coeffs_.size())) {
        return 0;
    }
    return coeffs_[static_cast<std::size_t>(idx)];
}

std::optional<Rational> QExp::valuation() const
{
    if (coeffs_.empty()) {
        return std::nullopt;
    }
    return ratio(lo_, denom_);
}

Rational QExp::valuation_bound() const
{
    if (!coeffs_.empty()) {
        return ratio(lo_, denom_);
    }
    if (!order_) {
        throw Error("valuation bound of the exact zero series is unbounded");
    }
    return *order_;
}

Rational QExp::leading_coeff() const
{
    if (coeffs_.empty()) {
        throw Error("leading coefficient of zero series");
    }
    return coeffs_.front();
}

QExp QExp::truncated(const Rational &t) const
{
    QExp out = *this;
    out.order_ = min_order(order_, t);
    out.normalize();
    return out;
}

QExp QExp::shifted(const Rational &e) const
{
    QExp out;
    out.order_ = order_;
    if (out.order_) {
        *out.order_ += e;
    }
    if (coeffs_.empty()) {
        return out;
    }
    const auto e_den = to_int64(Integer(e.get_den()));
    const auto l = lcm64(denom_, e_den);
    const auto stride = l / denom_;
    out.denom_ = l;
    out.lo_ = lo_ * stride + to_int64(Integer(e.get_num() * (l / e_den)));
    out.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(stride) + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out.coeffs_[i * static_cast<std::size_t>(stride)] = coeffs_[i];
    }
    out.normalize();
    return out;
}

QExp QExp::scaled(const Rational &c) const
{
    QExp out = *this;
    for (auto &x : out.coeffs_) {
        x *= c;
    }
    out.normalize();
    return out;
}

QExp add(const QExp &a, const QExp &b)
{
    const auto order = min_order(a.order(), b.order());
    if (a.is_zero() || b.is_zero()) {
        const QExp &other = a.is_zero() ? b : a;
        return QExp::from_coeffs(other.denom(), other.lo(), other.coeffs(), order);
    }
    const auto l = lcm64(a.denom(), b.denom());
    const auto aa = align(a, l);
    const auto ab = align(b, l);
    const auto hi_a = aa.lo + static_cast<std::int64_t>(a.coeffs().size() - 1) * aa.stride;
    const auto hi_b = ab.lo + static_cast<std::int64_t>(b.coeffs().size() - 1) * ab.stride;
    const auto lo = std::min(aa.lo, ab.lo);
    auto hi = std::max(hi_a, hi_b);
    if (order) {
        hi = std::min(hi, top_index(*order, l));
    }
    if (hi < lo) {
        return QExp::from_coeffs(l, 0, {}, order);
    }
    std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
    const auto accumulate = [&](const QExp &s, const Aligned &al) {
        for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
            const auto idx = al.lo + static_cast<std::int64_t>(i) * al.stride - lo;
            if (idx > hi - lo) {
                break;
            }
            out[static_cast<std::size_t>(idx)] += s.coeffs()[i];
        }
    };
    accumulate(a, aa);
    accumulate(b, ab);
    return QExp::from_coeffs(l, lo, std::move(out), order);
}

QExp neg(const QExp &a)
{
    return a.scaled(-1);
}

std::optional<Rational> product_order(const QExp &a, const QExp &b)
{
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) {
        return std::nullopt;
    }
    std::optional<Rational> out;
    if (a.order()) {
        out = *a.order() + b.valuation_bound();
    }
    if (b.order()) {
        out = min_order(out, *b.order() + a.valuation_bound());
    }
    return out;
}

QExp mul(const QExp &a, const QExp &b)
{
    const auto order = product_order(a, b);
    if (a.is_zero() || b.is_zero()) {
        return order ? QExp::zero_to(*order) : QExp();
    }
    const auto l = lcm64(a.denom(), b.denom());
    const auto aa = align(a, l);
    const auto ab = align(b, l);
    const auto lo = aa.lo + ab.lo;
    auto hi = lo + static_cast<std::int64_t>(a.coeffs().size() - 1) * aa.stride +
              static_cast<std::int64_t>(b.coeffs().size() - 1) * ab.stride;
    if (order) {
        hi = std::min(hi, top_index(*order, l));
    }
    if (hi < lo) {
        return QExp::from_coeffs(l, 0, {}, order);
    }
    std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
    Rational prod;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto &ca = a.coeffs()[i];
        if (sgn(ca) == 0) {
            continue;
        }
        const auto base = static_cast<std::int64_t>(i) * aa.stride;
        if (base > hi - lo) {
            break;
        }
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            const auto idx = base + static_cast<std::int64_t>(j) * ab.stride;
            if (idx > hi - lo) {
                break;
            }
            const auto &cb = b.coeffs()[j];
            if (sgn(cb) == 0) {
                continue;
            }
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            out[static_cast<std::size_t>(idx)] += prod;
        }
    }
    return QExp::from_coeffs(l, lo, std::move(out), order);
}

QExp operator+(const QExp &a, const QExp &b)
{
    return add(a, b);
}

QExp operator-(const QExp &a, const QExp &b)
{
    return add(a, neg(b));
}

QExp operator-(const QExp &a)
{
    return neg(a);
}

QExp operator*(const QExp &a, const QExp &b)
{
    return mul(a, b);
}

QExp invert(const QExp &a, const Rational &t)
{
    if (a.is_zero()) {
        throw Error("division by zero series");
    }
    const Rational v = *a.valuation();
    const Rational c = a.leading_coeff();
    if (a.is_exact() && a.coeffs().size() == 1) {
        return QExp::monomial(1 / c, -v);
    }
    Rational order = t;
    if (a.order() && *a.order() - 2 * v < order) {
        order = *a.order() - 2 * v;
    }
    const auto d = a.denom();
    // Result slots are q^{-v + k/d} for k = 0..n.
    const Rational span = (order + v) * d;
    if (span < 0) {
        return QExp::zero_to(order);
    }
    const auto n = to_int64(floor(span));
    std::vector<Rational> b(static_cast<std::size_t>(n + 1));
    const Rational inv_c = 1 / c;
    const auto &ac = a.coeffs();
    b[0] = inv_c;
    Rational acc, prod;
    for (std::int64_t k = 1; k <= n; ++k) {
        acc = 0;
        const auto jmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(ac.size()) - 1);
        for (std::int64_t j = 1; j <= jmax; ++j) {
            const auto &aj = ac[static_cast<std::size_t>(j)];
            if (sgn(aj) == 0) {
                continue;
            }
            mpq_mul(prod.get_mpq_t(), aj.get_mpq_t(), b[static_cast<std::size_t>(k - j)].get_mpq_t());
            acc += prod;
        }
        b[static_cast<std::size_t>(k)] = -acc * inv_c;
    }
    return QExp::from_coeffs(d, -to_int64(Rational(v * d)), std::move(b), order);
}

QExp power(const QExp &a, std::int64_t n, const Rational &t)
{
    if (n == 0) {
        return QExp::one();
    }
    QExp base = n < 0 ? invert(a, t) : a;
    auto e = n < 0 ? -n : n;
    // Valuations can be negative, so intermediate orders are tracked by the product rule
    // and only the final result is clipped to t.
    QExp result = QExp::one();
    while (e > 0) {
        if (e & 1) {
            result = result * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return result.truncated(t);
}

QExp log_series(const QExp &a, const Rational &t)
{
    if (a.is_zero() || a.lo() != 0 || a.coeffs().front() != 1) {
        throw Error("log_series requires constant term 1");
    }
    Rational order = t;
    if (a.order() && *a.order() < order) {
        order = *a.order();
    }
    const auto d = a.denom();
    if (order < 0) {
        return QExp::zero_to(order);
    }
    const auto n = to_int64(floor(order * d));
    const auto &ac = a.coeffs();
    const auto a_at = [&](std::int64_t i) -> const Rational * {
        if (i < static_cast<std::int64_t>(ac.size())) {
            return &ac[static_cast<std::size_t>(i)];
        }
        return nullptr;
    };
    std::vector<Rational> g(static_cast<std::size_t>(n + 1));
    Rational acc, prod;
    for (std::int64_t m = 1; m <= n; ++m) {
        acc = 0;
        for (std::int64_t k = 1; k < m; ++k) {
            const auto *am = a_at(m - k);
            if (am == nullptr || sgn(*am) == 0 || sgn(g[static_cast<std::size_t>(k)]) == 0) {
                continue;
            }
            mpq_mul(prod.get_mpq_t(), g[static_cast<std::size_t>(k)].get_mpq_t(), am->get_mpq_t());
            acc += prod * k;
        }
        const auto *am = a_at(m);
        g[static_cast<std::size_t>(m)] = (am ? *am : Rational(0)) - acc / m;
    }
    return QExp::from_coeffs(d, 0, std::move(g), order);
}

QExp exp_series(const QExp &a, const Rational &t)
{
    if (!a.is_zero() && a.lo() <= 0) {
        throw Error("exp_series requires positive valuation");
    }
    Rational order = t;
    if (a.order() && *a.order() < order) {
        order = *a.order();
    }
    const auto d = a.denom();
    if (order < 0) {
        return QExp::zero_to(order);
    }
    const auto n = to_int64(floor(order * d));
    std::vector<Rational> g(static_cast<std::size_t>(n + 1));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto idx = a.lo() + static_cast<std::int64_t>(i);
        if (idx <= n) {
            g[static_cast<std::size_t>(idx)] = a.coeffs()[i];
        }
    }
    std::vector<Rational> b(static_cast<std::size_t>(n + 1));
    b[0] = 1;
    Rational acc, prod;
    for (std::int64_t m = 1; m <= n; ++m) {
        acc = 0;
        for (std::int64_t k = 1; k <= m; ++k) {
            const auto &gk = g[static_cast<std::size_t>(k)];
            if (sgn(gk) == 0) {
                continue;
            }
            mpq_mul(prod.get_mpq_t(), gk.get_mpq_t(), b[static_cast<std::size_t>(m - k)].get_mpq_t());
            acc += prod * k;
        }
        b[static_cast<std::size_t>(m)] = acc / m;
    }
    return QExp::from_coeffs(d, 0, std::move(b), order);
}

QExp rescale(const QExp &a, const Rational &s)
{
    if (sgn(s) <= 0) {
        throw Error("rescale factor must be positive");
    }
    std::optional<Rational> order = a.order();
    if (order) {
        *order *= s;
    }
    if (a.is_zero()) {
        return order ? QExp::zero_to(*order) : QExp();
    }
    const auto p = to_int64(Integer(s.get_num()));
    const auto r = to_int64(Integer(s.get_den()));
    std::vector<Rational> out((a.coeffs().size() - 1) * static_cast<std::size_t>(p) + 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        out[i * static_cast<std::size_t>(p)] = a.coeffs()[i];
    }
    return QExp::from_coeffs(a.denom() * r, a.lo() * p, std::move(out), order);
}

QExp negate_q(const QExp &a)
{
    if (a.denom() != 1) {
        throw Error("q->-q undefined off integer lattice");
    }
    auto coeffs = a.coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if ((a.lo() + static_cast<std::int64_t>(i)) % 2 != 0) {
            coeffs[i] = -coeffs[i];
        }
    }
    return QExp::from_coeffs(1, a.lo(), std::move(coeffs), a.order());
}

Comparison equal_to(const QExp &a, const QExp &b, const Rational &t)
{
    if ((a.order() && *a.order() < t) || (b.order() && *b.order() < t)) {
        throw Error("insufficient truncation: comparison to " + to_string(t) + " exceeds operand order");
    }
    const QExp diff = (a - b).truncated(t);
    if (diff.is_zero()) {
        return {};
    }
    const Rational e = *diff.valuation();
    return {Difference{e, a.coeff(e), b.coeff(e)}};
}

std::string exponent_string(const Rational &e)
{
    if (e == 1) {
        return "q";
    }
    if (is_integral(e) && sgn(e) >= 0) {
        return "q^" + to_string(e);
    }
    return "q^{" + to_string(e) + "}";
}

std::string to_string(const QExp &a, bool with_order)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto &c = a.coeffs()[i];
        if (sgn(c) == 0) {
            continue;
        }
        const Rational e = a.exponent_at(i);
        const Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) {
                out << "-";
            }
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            out << to_string(mag);
            continue;
        }
        if (mag != 1) {
            if (is_integral(mag)) {
                out << to_string(mag);
            } else {
                out << "(" << to_string(mag) << ")";
            }
        }
        out << exponent_string(e);
    }
    if (first) {
        out << "0";
    }
    if (with_order && a.order()) {
        out << " + O(" << exponent_string(*a.order()) << ")";
    }
    return out.str();
}

} // namespace qseries

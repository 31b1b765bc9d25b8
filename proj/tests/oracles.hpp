#pragma once

// Slow, independent reference computations. Nothing here calls into the library's
// series arithmetic; series are plain exponent -> coefficient maps.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <doctest.h>

#include <qseries/series.hpp>

namespace doctest
{
template <>
struct StringMaker<qseries::QExp>
{
    static String convert(const qseries::QExp &a)
    {
        return qseries::to_string(a, true).c_str();
    }
};
} // namespace doctest

namespace oracle
{

using qseries::Rational;
using Naive = std::map<Rational, Rational>;

inline Naive mono(const Rational &c, const Rational &e)
{
    Naive out;
    if (c != 0) {
        out[e] = c;
    }
    return out;
}

inline void clean(Naive &a)
{
    for (auto it = a.begin(); it != a.end();) {
        it = it->second == 0 ? a.erase(it) : std::next(it);
    }
}

inline Naive add(const Naive &a, const Naive &b)
{
    Naive out = a;
    for (const auto &[e, c] : b) {
        out[e] += c;
    }
    clean(out);
    return out;
}

inline Naive mul(const Naive &a, const Naive &b, const Rational &t)
{
    Naive out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            const Rational e = ea + eb;
            if (e <= t) {
                out[e] += ca * cb;
            }
        }
    }
    clean(out);
    return out;
}

inline Naive shift(const Naive &a, const Rational &s)
{
    Naive out;
    for (const auto &[e, c] : a) {
        out[e + s] = c;
    }
    return out;
}

inline Naive cut(const Naive &a, const Rational &t)
{
    Naive out;
    for (const auto &[e, c] : a) {
        if (e <= t) {
            out[e] = c;
        }
    }
    return out;
}

// 1/a for a with constant term a0 != 0 and every other exponent positive:
// 1/a = (1/a0) sum_k r^k with r = 1 - a/a0.
inline Naive inverse(const Naive &a, const Rational &t)
{
    const Rational a0 = a.at(0);
    Naive r;
    Rational v = -1;
    for (const auto &[e, c] : a) {
        if (e != 0) {
            r[e] = -c / a0;
            if (v < 0 || e < v) {
                v = e;
            }
        }
    }
    Naive out = mono(1 / a0, 0);
    if (r.empty()) {
        return out;
    }
    Naive power = mono(1 / a0, 0);
    for (Rational reach = 0; reach <= t; reach += v) {
        power = mul(power, r, t);
        if (power.empty()) {
            break;
        }
        out = add(out, power);
    }
    return out;
}

// (c q^e; q^s)_n as a product of n binomials; n < 0 means enough factors for order t (e > 0).
inline Naive poch(const Rational &c, const Rational &e, const Rational &s, std::int64_t n, const Rational &t)
{
    Naive out = mono(1, 0);
    for (std::int64_t k = 0; n < 0 ? e + s * k <= t : k < n; ++k) {
        Naive f = mono(1, 0);
        f[e + s * k] += -c;
        clean(f);
        out = mul(out, f, t);
    }
    return out;
}

inline std::int64_t partitions(std::int64_t n)
{
    std::vector<std::int64_t> p(static_cast<std::size_t>(n + 1), 0);
    p[0] = 1;
    for (std::int64_t part = 1; part <= n; ++part) {
        for (std::int64_t m = part; m <= n; ++m) {
            p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - part)];
        }
    }
    return p[static_cast<std::size_t>(n)];
}

inline std::int64_t sigma1(std::int64_t n)
{
    std::int64_t s = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) {
            s += d;
        }
    }
    return s;
}

// sum over n in [0, box]^r of q^{n^T AD n / 2 + B.n + C} / prod (q^{d_i}; q^{d_i})_{n_i}.
// AD is given directly as the symmetric matrix of the quadratic form.
inline Naive nahm_box(const std::vector<std::vector<Rational>> &ad, const std::vector<Rational> &b, const Rational &c,
                      const std::vector<std::int64_t> &d, std::int64_t box, const Rational &t)
{
    const std::size_t r = b.size();
    Naive out;
    std::vector<std::int64_t> n(r, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == r) {
            Rational e = c;
            for (std::size_t x = 0; x < r; ++x) {
                e += b[x] * n[x];
                for (std::size_t y = 0; y < r; ++y) {
                    e += ad[x][y] * n[x] * n[y] / 2;
                }
            }
            if (e > t) {
                return;
            }
            Naive den = mono(1, 0);
            for (std::size_t x = 0; x < r; ++x) {
                den = mul(den, poch(1, d[x], d[x], n[x], t - e), t - e);
            }
            out = add(out, shift(inverse(den, t - e), e));
            return;
        }
        for (n[i] = 0; n[i] <= box; ++n[i]) {
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline Naive from(const qseries::QExp &a)
{
    Naive out;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] != 0) {
            out[a.exponent_at(i)] = a.coeffs()[i];
        }
    }
    return out;
}

// Agreement of every exponent <= t.
inline bool same(const Naive &a, const qseries::QExp &b, const Rational &t)
{
    return cut(a, t) == cut(from(b), t);
}

// Hand-rolled generators over a seeded engine.
struct Gen
{
    std::mt19937_64 rng;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den = 4)
    {
        const auto den = integer(1, max_den);
        return qseries::ratio(integer(lo * den, hi * den), den);
    }

    bool coin()
    {
        return integer(0, 1) == 1;
    }

    // Random finite series on the lattice (1/denom)Z with exponents in [lo, lo + len).
    qseries::QExp series(std::int64_t denom, std::int64_t lo, std::int64_t len, std::optional<Rational> order)
    {
        std::vector<Rational> c;
        for (std::int64_t i = 0; i < len; ++i) {
            c.push_back(integer(0, 2) == 0 ? Rational(0) : rational(-5, 5, 3));
        }
        if (order) {
            const Rational top = qseries::ratio(lo + len - 1, denom);
            if (*order < top) {
                order = top;
            }
        }
        return qseries::QExp::from_coeffs(denom, lo, c, order);
    }

    // Unit series 1 + (terms of positive exponent).
    qseries::QExp unit(std::int64_t denom, std::int64_t len)
    {
        auto s = series(denom, 1, len, std::nullopt);
        return s + qseries::QExp::one();
    }
};

} // namespace oracle

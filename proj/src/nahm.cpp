#include <qseries/nahm.hpp>

#include <algorithm>
#include <limits>
#include <map>

#include <qseries/lattice.hpp>

namespace qseries
{

namespace
{

using Wide = __int128;

Wide checked_add(Wide a, Wide b)
{
    Wide out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw Error("Nahm coefficient overflow");
    }
    return out;
}

Wide checked_mul(Wide a, Wide b)
{
    Wide out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error("Nahm coefficient overflow");
    }
    return out;
}

Integer to_integer(Wide v)
{
    const bool negative = v < 0;
    // |v| fits in unsigned __int128 for every value reachable here.
    auto u = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Integer z(static_cast<unsigned long>(u >> 64));
    z <<= 64;
    z += Integer(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
    return negative ? Integer(-z) : z;
}

// Truncated product of integer series on the integer lattice, both starting at q^0.
std::vector<Wide> convolve(const std::vector<Wide> &a, const std::vector<Wide> &b, std::size_t len)
{
    std::vector<Wide> out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (b[j] != 0) {
                out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
            }
        }
    }
    return out;
}

// 1/(q^d; q^d)_n for n = 0..nmax, each as coefficients of q^0..q^len-1.
std::vector<std::vector<Wide>> inverse_pochhammers(std::int64_t d, std::int64_t nmax, std::size_t len)
{
    std::vector<std::vector<Wide>> table;
    table.reserve(static_cast<std::size_t>(nmax + 1));
    std::vector<Wide> cur(len, 0);
    if (len > 0) {
        cur[0] = 1;
    }
    table.push_back(cur);
    for (std::int64_t n = 1; n <= nmax; ++n) {
        const auto step = static_cast<std::size_t>(d * n);
        for (std::size_t j = step; j < len; ++j) {
            cur[j] = checked_add(cur[j], cur[j - step]);
        }
        table.push_back(cur);
    }
    return table;
}

} // namespace

void ModularTriple::validate() const
{
    const auto r = rank();
    if (A.rows() != r || A.cols() != r) {
        throw Error("triple: A must be " + std::to_string(r) + "x" + std::to_string(r));
    }
    if (!A.is_symmetric()) {
        throw Error("triple: A must be symmetric");
    }
    if (!check_posdef(A)) {
        throw Error("triple: A is not positive definite");
    }
}

RatMatrix ModularQuadruple::symmetrized() const
{
    RatVector d(D.begin(), D.end());
    return A * RatMatrix::diagonal(d);
}

void ModularQuadruple::validate() const
{
    const auto r = rank();
    if (A.rows() != r || A.cols() != r || D.size() != r) {
        throw Error("quadruple: A, B, D dimensions disagree");
    }
    for (auto d : D) {
        if (d <= 0) {
            throw Error("quadruple: symmetrizer entries must be positive integers");
        }
    }
    const RatMatrix ad = symmetrized();
    if (!ad.is_symmetric()) {
        throw Error("quadruple: AD must be symmetric");
    }
    if (!check_posdef(ad)) {
        throw Error("quadruple: AD is not positive definite");
    }
}

ModularQuadruple ModularQuadruple::from_triple(const ModularTriple &t)
{
    return {t.A, t.B, t.C, std::vector<std::int64_t>(t.rank(), 1)};
}

NahmExpansion gnahm_expand_detailed(const ModularQuadruple &q, const Rational &t,
                                    const std::optional<MonomialVector> &spec)
{
    q.validate();
    const auto r = q.rank();
    RatVector lin = q.B;
    if (spec) {
        if (spec->size() != r) {
            throw Error("specialization vector has wrong length");
        }
        for (std::size_t i = 0; i < r; ++i) {
            lin[i] += (*spec)[i];
        }
    }
    const LatticeEnumerator lattice(QuadraticForm{q.symmetrized(), lin, 0},
                                    std::vector<IndexRange>(r, IndexRange{0, std::nullopt}));
    const Rational inner = t - q.C;
    const auto scale = lattice.scale();

    std::vector<std::int64_t> points;
    std::vector<std::int64_t> values;
    lattice.for_each(inner, [&](std::span<const std::int64_t> p, std::int64_t v) {
        points.insert(points.end(), p.begin(), p.end());
        values.push_back(v);
    });

    NahmExpansion out;
    out.terms = values.size();
    if (values.empty()) {
        out.below_minimum = true;
        out.series = QExp::zero_to(t);
        return out;
    }
    const auto top = to_int64(floor(inner * scale));
    const auto vmin = *std::min_element(values.begin(), values.end());
    const auto span = static_cast<std::size_t>(top - vmin + 1);
    // Integer q-powers needed from each inverse Pochhammer.
    const auto int_len = static_cast<std::size_t>((top - vmin) / scale + 1);

    std::vector<std::int64_t> nmax(r, 0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        for (std::size_t i = 0; i < r; ++i) {
            nmax[i] = std::max(nmax[i], points[k * r + i]);
        }
    }
    std::map<std::int64_t, std::vector<std::vector<Wide>>> tables;
    for (std::size_t i = 0; i < r; ++i) {
        auto &tab = tables[q.D[i]];
        const auto need = static_cast<std::size_t>(nmax[i] + 1);
        if (tab.size() < need) {
            tab = inverse_pochhammers(q.D[i], nmax[i], int_len);
        }
    }
    const auto &last_table = tables.at(q.D[r - 1]);

    std::vector<Wide> acc(span, 0);
    std::vector<Wide> inner_sum(span, 0);
    std::size_t k = 0;
    while (k < values.size()) {
        // Points sharing the first r-1 coordinates are consecutive.
        std::size_t end = k + 1;
        while (end < values.size() &&
               std::equal(points.begin() + static_cast<std::ptrdiff_t>(k * r),
                          points.begin() + static_cast<std::ptrdiff_t>(k * r + r - 1),
                          points.begin() + static_cast<std::ptrdiff_t>(end * r))) {
            ++end;
        }
        std::fill(inner_sum.begin(), inner_sum.end(), 0);
        std::size_t first_slot = span;
        for (std::size_t p = k; p < end; ++p) {
            const auto slot = static_cast<std::size_t>(values[p] - vmin);
            first_slot = std::min(first_slot, slot);
            const auto &series = last_table[static_cast<std::size_t>(points[p * r + r - 1])];
            for (std::size_t j = 0; slot + j * static_cast<std::size_t>(scale) < span; ++j) {
                if (series[j] != 0) {
                    auto &cell = inner_sum[slot + j * static_cast<std::size_t>(scale)];
                    cell = checked_add(cell, series[j]);
                }
            }
        }
        std::vector<Wide> prefix_product{1};
        for (std::size_t i = 0; i + 1 < r; ++i) {
            const auto &series = tables.at(q.D[i])[static_cast<std::size_t>(points[k * r + i])];
            prefix_product = convolve(prefix_product, series, int_len);
        }
        for (std::size_t s = first_slot; s < span; ++s) {
            if (inner_sum[s] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < prefix_product.size() && s + j * static_cast<std::size_t>(scale) < span; ++j) {
                if (prefix_product[j] != 0) {
                    auto &cell = acc[s + j * static_cast<std::size_t>(scale)];
                    cell = checked_add(cell, checked_mul(inner_sum[s], prefix_product[j]));
                }
            }
        }
        k = end;
    }

    std::vector<Rational> coeffs(span);
    for (std::size_t s = 0; s < span; ++s) {
        if (acc[s] != 0) {
            coeffs[s] = Rational(to_integer(acc[s]));
        }
    }
    out.series = QExp::from_coeffs(scale, vmin, std::move(coeffs), inner).shifted(q.C);
    return out;
}

QExp gnahm_expand(const ModularQuadruple &q, const Rational &t, const std::optional<MonomialVector> &spec)
{
    return gnahm_expand_detailed(q, t, spec).series;
}

QExp nahm_expand(const ModularTriple &t3, const Rational &t, const std::optional<MonomialVector> &spec)
{
    t3.validate();
    return gnahm_expand(ModularQuadruple::from_triple(t3), t, spec);
}

ModularTriple dual_triple(const ModularTriple &t)
{
    t.validate();
    const RatMatrix inv = inverse(t.A);
    const RatVector b = inv * t.B;
    const Rational c = dot(t.B, b) / 2 - ratio(static_cast<std::int64_t>(t.rank()), 24) - t.C;
    return {inv, b, c};
}

ModularQuadruple dual_quadruple(const ModularQuadruple &q)
{
    q.validate();
    const RatMatrix inv = inverse(q.A);
    const RatVector b = inv * q.B;
    const RatVector w = inverse(q.symmetrized()) * q.B;
    Rational trace = 0;
    for (auto d : q.D) {
        trace += d;
    }
    const Rational c = dot(q.B, w) / 2 - trace / 24 - q.C;
    return {inv, b, c, q.D};
}

ModularQuadruple reindex_source(ReindexSide side)
{
    const std::vector<std::int64_t> d{1, 2, 2};
    RatMatrix ad;
    if (side == ReindexSide::identity) {
        ad = RatMatrix{{1, 0, -1}, {0, 2, -1}, {-1, -1, 2}};
    } else {
        ad = RatMatrix{{3, 2, 4}, {2, 4, 4}, {4, 4, 8}};
    }
    RatMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            a(i, j) = ad(i, j) / d[j];
        }
    }
    return {a, RatVector(3), 0, d};
}

ModularTriple reindex_target(ReindexSide side, const MonomialVector &b)
{
    if (b.size() != 3) {
        throw Error("reindex_rank4 expects three specialization exponents");
    }
    const Rational h = ratio(1, 2);
    const Rational qtr = ratio(1, 4);
    RatMatrix a;
    if (side == ReindexSide::identity) {
        a = RatMatrix{{1, 0, 0, -h}, {0, 1, 0, -h}, {0, 0, 1, -h}, {-h, -h, -h, 1}};
    } else {
        a = RatMatrix{{2, 1, 1, 2}, {1, 2, 1, 2}, {1, 1, 2, 2}, {2, 2, 2, 4}};
    }
    return {a, RatVector{b[0] * h - qtr, b[0] * h + qtr, b[1] * h, b[2] * h}, 0};
}

SeriesPair reindex_rank4(const MonomialVector &b, ReindexSide side, const Rational &t)
{
    SeriesPair out;
    out.lhs = gnahm_expand(reindex_source(side), t, b);
    const ModularTriple target = reindex_target(side, b);
    RatVector doubled = target.B;
    for (auto &x : doubled) {
        x *= 2;
    }
    out.rhs = gnahm_expand(ModularQuadruple{target.A, doubled, 0, std::vector<std::int64_t>(4, 2)}, t);
    return out;
}

CheckResult splitting_check(std::int64_t n_max, const Rational &t)
{
    CheckResult result;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        const Rational shift = ratio(n * (n - 1), 2);
        QExp lhs = QExp::zero_to(t);
        if (shift <= t) {
            lhs = invert(poch(poch_finite(1, 1, 1, n), t - shift), t - shift).shifted(shift);
        }
        QExp rhs = QExp::zero_to(t);
        for (std::int64_t i = 0; i <= n; ++i) {
            const auto j = n - i;
            const Rational e = i * i + j * j - i;
            if (e > t) {
                continue;
            }
            const Rational inner = t - e;
            const QExp den = poch(poch_finite(1, 2, 2, i), inner) * poch(poch_finite(1, 2, 2, j), inner);
            rhs = rhs + invert(den, inner).shifted(e);
        }
        ++result.checked;
        auto cmp = equal_to(lhs, rhs, t);
        if (!cmp.equal()) {
            result.index = n;
            result.difference = cmp.difference;
            return result;
        }
    }
    return result;
}

} // namespace qseries

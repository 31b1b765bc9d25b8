#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <qseries/json_io.hpp>
#include <qseries/nahm.hpp>

#include "oracles.hpp"

using namespace qseries;

namespace
{

QExp poly(std::vector<Rational> c, std::optional<Rational> order = std::nullopt)
{
    return QExp::from_coeffs(1, 0, std::move(c), order);
}

const RatMatrix exam_a{{2, 2, 2}, {2, 4, 4}, {1, 2, 3}};
const RatMatrix thm_a{{1, ratio(-1, 2), 0}, {ratio(-1, 2), 1, -1}, {0, ratio(-1, 2), 1}};
const RatMatrix rank4_a{{1, 0, 0, ratio(-1, 2)}, {0, 1, 0, ratio(-1, 2)}, {0, 0, 1, ratio(-1, 2)},
                        {ratio(-1, 2), ratio(-1, 2), ratio(-1, 2), 1}};
const RatMatrix rank4_dual{{2, 1, 1, 2}, {1, 2, 1, 2}, {1, 1, 2, 2}, {2, 2, 2, 4}};

std::vector<std::vector<Rational>> rows(const RatMatrix &m)
{
    std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i][j] = m(i, j);
        }
    }
    return out;
}

// S = L L^T + I with small integer L: symmetric, positive definite, integral.
RatMatrix random_posdef(oracle::Gen &g, std::size_t r)
{
    RatMatrix l(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            l(i, j) = g.integer(-2, 2);
        }
    }
    RatMatrix s = l * l.transpose();
    for (std::size_t i = 0; i < r; ++i) {
        s(i, i) += 1;
    }
    return s;
}

// A quadruple with AD = S for random S and D.
ModularQuadruple random_quadruple(oracle::Gen &g, std::size_t r, bool nonneg_b)
{
    ModularQuadruple q;
    q.D.resize(r);
    RatVector dinv(r);
    for (std::size_t i = 0; i < r; ++i) {
        q.D[i] = g.integer(1, 2);
        dinv[i] = ratio(1, q.D[i]);
    }
    q.A = random_posdef(g, r) * RatMatrix::diagonal(dinv);
    for (std::size_t i = 0; i < r; ++i) {
        q.B.push_back(nonneg_b ? g.rational(0, 2, 2) : g.rational(-2, 2, 2));
    }
    q.C = nonneg_b ? Rational(0) : g.rational(-1, 1, 24);
    return q;
}

ModularQuadruple permuted(const ModularQuadruple &q, const std::vector<std::size_t> &p)
{
    const auto r = q.rank();
    ModularQuadruple out;
    out.A = RatMatrix(r, r);
    out.B.resize(r);
    out.D.resize(r);
    out.C = q.C;
    for (std::size_t i = 0; i < r; ++i) {
        out.B[i] = q.B[p[i]];
        out.D[i] = q.D[p[i]];
        for (std::size_t j = 0; j < r; ++j) {
            out.A(i, j) = q.A(p[i], p[j]);
        }
    }
    return out;
}

} // namespace

TEST_CASE("positive definiteness")
{
    CHECK(check_posdef(RatMatrix::identity(2)));
    CHECK(check_posdef(RatMatrix{{4, 4, 2}, {4, 8, 4}, {2, 4, 3}}));
    CHECK(!check_posdef(RatMatrix{{1, 2}, {2, 1}}));
    CHECK_THROWS(check_posdef(RatMatrix{{1, 2}, {0, 1}}));
    const auto m = leading_minors(RatMatrix{{4, 4, 2}, {4, 8, 4}, {2, 4, 3}});
    CHECK(m == std::vector<Rational>{4, 16, 16});
}

TEST_CASE("Rogers-Ramanujan from rank one")
{
    const ModularTriple rr{RatMatrix{{2}}, {0}, 0};
    CHECK(equal_to(nahm_expand(rr, 6), poly({1, 1, 1, 1, 2, 2, 3}), 6).equal());
    const Rational t = 40;
    auto prod = oracle::mono(1, 0);
    for (int k = 0; 5 * k + 1 <= t; ++k) {
        prod = oracle::mul(prod, oracle::inverse(oracle::poch(1, 5 * k + 1, 1, 1, t), t), t);
        prod = oracle::mul(prod, oracle::inverse(oracle::poch(1, 5 * k + 4, 1, 1, t), t), t);
    }
    CHECK(oracle::same(prod, nahm_expand(rr, t), t));
    const ModularTriple rr2{RatMatrix{{2}}, {1}, 0};
    const auto second = nahm_expand(rr2, 20);
    CHECK(second.coeff(0) == 1);
    CHECK(second.coeff(2) == 1);
    CHECK(second.coeff(1) == 0);
}

TEST_CASE("below the minimal exponent")
{
    const ModularTriple t{RatMatrix{{2}}, {0}, 0};
    CHECK(nahm_expand(t, 0) == QExp::one().truncated(0));
    const ModularTriple shifted{RatMatrix{{2}}, {0}, 5};
    const auto d = gnahm_expand_detailed(ModularQuadruple::from_triple(shifted), 3);
    CHECK(d.below_minimum);
    CHECK(d.series.is_zero());
}

TEST_CASE("generalized sum against a brute-force oracle")
{
    const ModularQuadruple q{exam_a, {0, -1, -1}, ratio(-1, 48), {2, 2, 1}};
    const Rational t = 10;
    const auto fast = gnahm_expand(q, t);
    const auto slow = oracle::nahm_box(rows(q.symmetrized()), q.B, q.C, q.D, 6, t);
    CHECK(oracle::same(slow, fast, t));
    const auto prod = oracle::shift(oracle::poch(-1, ratio(1, 2), 1, -1, t + ratio(1, 48)), ratio(-1, 48));
    CHECK(oracle::same(prod, fast, t));
}

TEST_CASE("the three-variable sums of the half-lattice theorem")
{
    // Summation order (i, j, k) with bases (q;q)_i (q^2;q^2)_j (q^2;q^2)_k; the quadruple's
    // coordinates are (j, k, i).
    const ModularQuadruple q2{thm_a, {1, 0, ratio(1, 2)}, 0, {2, 2, 1}};
    const auto s = gnahm_expand(q2, 5);
    CHECK(equal_to(s, poly({1, 3, 6, 13, 24, 42}), 5).equal());
    const auto slow = oracle::nahm_box(rows(q2.symmetrized()), q2.B, 0, q2.D, 7, 5);
    CHECK(oracle::same(slow, s, 5));

    const ModularQuadruple q0{thm_a, {ratio(-1, 2), 0, ratio(-1, 2)}, 0, {2, 2, 1}};
    const auto s0 = gnahm_expand(q0, 3);
    CHECK(s0.valuation() == ratio(-1, 2));
    CHECK(s0.coeff(ratio(-1, 2)) == 4);
    CHECK(s0.coeff(0) == 8);
    CHECK(oracle::same(oracle::nahm_box(rows(q0.symmetrized()), q0.B, 0, q0.D, 7, 3), s0, 3));
}

TEST_CASE("triples and identity symmetrizers agree")
{
    const ModularTriple t{rank4_dual, {0, ratio(1, 2), ratio(1, 2), 0}, ratio(1, 48)};
    const auto q = ModularQuadruple::from_triple(t);
    CHECK(q.D == std::vector<std::int64_t>{1, 1, 1, 1});
    CHECK(nahm_expand(t, 12) == gnahm_expand(q, 12));
}

TEST_CASE("Zagier dual")
{
    const auto d = dual_triple(ModularTriple{RatMatrix{{2}}, {0}, ratio(-1, 60)});
    CHECK(d.A == RatMatrix{{ratio(1, 2)}});
    CHECK(d.B == RatVector{0});
    CHECK(d.C == ratio(-1, 40));

    const auto d1 = dual_triple(ModularTriple{rank4_a, {0, ratio(1, 2), ratio(1, 2), ratio(-1, 2)}, ratio(1, 16)});
    CHECK(d1.A == rank4_dual);
    CHECK(d1.B == RatVector{0, ratio(1, 2), ratio(1, 2), 0});
    CHECK(d1.C == ratio(1, 48));
    const auto d2 = dual_triple(ModularTriple{rank4_a, {0, ratio(1, 2), ratio(1, 2), 0}, ratio(1, 16)});
    CHECK(d2.B == RatVector{1, ratio(3, 2), ratio(3, 2), 2});
}

TEST_CASE("Mizuno dual")
{
    const ModularQuadruple b1{exam_a, {1, 0, ratio(1, 2)}, 0, {2, 2, 1}};
    const auto d1 = dual_quadruple(b1);
    CHECK(d1.A == thm_a);
    CHECK(d1.B == RatVector{1, -1, ratio(1, 2)});
    CHECK(d1.D == b1.D);
    const auto d0 = dual_quadruple(ModularQuadruple{exam_a, {0, -1, -1}, ratio(-1, 48), {2, 2, 1}});
    CHECK(d0.C == ratio(1, 16));
    // The computed vector; the closed form of the half-lattice theorem uses (-1/2, 0, -1/2).
    CHECK(d0.B == RatVector{ratio(1, 2), 0, ratio(-1, 2)});
    CHECK(d0.B != RatVector{ratio(-1, 2), 0, ratio(-1, 2)});
}

TEST_CASE("quadruple validation")
{
    CHECK_THROWS(ModularQuadruple({RatMatrix{{1, 2}, {2, 1}}, {0, 0}, 0, {1, 1}}).validate());
    CHECK_THROWS(ModularQuadruple({RatMatrix{{2, 1}, {1, 2}}, {0, 0}, 0, {1, 2}}).validate());
    CHECK_THROWS(ModularQuadruple({RatMatrix{{2}}, {0}, 0, {0}}).validate());
    CHECK_THROWS(gnahm_expand(ModularQuadruple{RatMatrix{{1, 2}, {2, 1}}, {0, 0}, 0, {1, 1}}, 5));
    CHECK_NOTHROW(ModularQuadruple({exam_a, {0, 0, 0}, 0, {2, 2, 1}}).validate());
}

TEST_CASE("quadruple json")
{
    const ModularQuadruple q{exam_a, {0, -1, -1}, ratio(-1, 48), {2, 2, 1}};
    CHECK(quadruple_from_json(to_json(q)) == q);
    const auto j = Json::parse(R"({"A":[["2"]],"B":["0"],"C":"-1/60"})");
    CHECK(is_plain_triple(j));
    CHECK(quadruple_from_json(j).D == std::vector<std::int64_t>{1});
    CHECK(!is_plain_triple(to_json(q)));
}

TEST_CASE("rank-three to rank-four reindexing")
{
    for (const auto &b : {RatVector{ratio(1, 2), 1, 0}, RatVector{ratio(1, 2), 1, -1}}) {
        const auto p = reindex_rank4(b, ReindexSide::identity, 16);
        CHECK(equal_to(p.lhs, p.rhs, 16).equal());
    }
    for (const auto &b : {RatVector{ratio(1, 2), 1, 0}, RatVector{ratio(5, 2), 3, 4}}) {
        const auto p = reindex_rank4(b, ReindexSide::mizuno, 16);
        CHECK(equal_to(p.lhs, p.rhs, 16).equal());
    }
    const auto m = reindex_rank4({-1, 0, -1}, ReindexSide::mizuno, 16);
    CHECK(equal_to(m.lhs, m.rhs, 16).equal());
    // Both sides come out as (-q^{1/2}; q)_inf, which is (-q; q^2)_inf at q^{1/2}.
    CHECK(equal_to(m.lhs, poch(poch_infinite(-1, ratio(1, 2), 1), 16), 16).equal());
    CHECK(!equal_to(m.lhs, poch(poch_infinite(-1, 1, 2), 16), 16).equal());

    const auto target = reindex_target(ReindexSide::mizuno, {ratio(1, 2), 1, 0});
    CHECK(target.A == rank4_dual);
    CHECK(target.B == RatVector{0, ratio(1, 2), ratio(1, 2), 0});
    const auto tilde = reindex_target(ReindexSide::mizuno, {-1, 0, -1});
    CHECK(tilde.B == RatVector{ratio(-3, 4), ratio(-1, 4), 0, ratio(-1, 2)});
    const auto ident = reindex_target(ReindexSide::identity, {ratio(-1, 2), ratio(-1, 2), 0});
    CHECK(ident.A == rank4_a);
    CHECK(ident.B == RatVector{ratio(-1, 2), 0, ratio(-1, 4), 0});
}

TEST_CASE("splitting identity")
{
    CHECK(splitting_check(0, 12).passed());
    const auto r = splitting_check(25, 30);
    CHECK(r.passed());
    CHECK(r.checked == 26);
    // n = 2 by hand.
    const Rational t = 12;
    const auto q2 = [&](int k) { return poch(poch_finite(1, 2, 2, k), t); };
    const auto lhs = QExp::monomial(1, 1) * invert(poch(poch_finite(1, 1, 1, 2), t), t);
    const auto rhs = QExp::monomial(1, 1) * invert(q2(1) * q2(1), t) + QExp::monomial(1, 2) * invert(q2(2), t) +
                     QExp::monomial(1, 4) * invert(q2(2), t);
    CHECK(equal_to(lhs, rhs, t).equal());
}

TEST_CASE("property: duality is an involution")
{
    oracle::Gen g(31);
    for (int i = 0; i < 50; ++i) {
        const auto r = static_cast<std::size_t>(g.integer(1, 4));
        auto q = random_quadruple(g, r, false);
        q.validate();
        const auto dq = dual_quadruple(q);
        dq.validate();
        REQUIRE(dual_quadruple(dq) == q);

        const ModularTriple t{random_posdef(g, r), q.B, q.C};
        REQUIRE(dual_triple(dual_triple(t)) == t);
    }
}

TEST_CASE("property: enumeration does not depend on coordinate order")
{
    oracle::Gen g(32);
    for (int i = 0; i < 20; ++i) {
        const auto r = static_cast<std::size_t>(g.integer(1, 3));
        const auto q = random_quadruple(g, r, false);
        std::vector<std::size_t> p(r);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), g.rng);
        const Rational t = 8;
        REQUIRE(gnahm_expand(q, t) == gnahm_expand(permuted(q, p), t));
    }
}

TEST_CASE("property: enumeration matches the box oracle")
{
    oracle::Gen g(33);
    for (int i = 0; i < 8; ++i) {
        const auto r = static_cast<std::size_t>(g.integer(1, 3));
        const auto q = random_quadruple(g, r, true);
        const Rational t = 5;
        // AD >= I and B >= 0 keep every point with exponent <= 5 inside |n_i| <= 4.
        REQUIRE(oracle::same(oracle::nahm_box(rows(q.symmetrized()), q.B, q.C, q.D, 4, t), gnahm_expand(q, t), t));
    }
}

TEST_CASE("property: raising the order keeps earlier coefficients")
{
    oracle::Gen g(34);
    for (int i = 0; i < 10; ++i) {
        const auto q = random_quadruple(g, static_cast<std::size_t>(g.integer(1, 3)), false);
        REQUIRE(equal_to(gnahm_expand(q, 6), gnahm_expand(q, 11), 6).equal());
    }
}

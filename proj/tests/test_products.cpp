#include <doctest.h>

#include <qseries/json_io.hpp>
#include <qseries/products.hpp>

#include "oracles.hpp"

using namespace qseries;

namespace
{

QExp poly(std::vector<Rational> c, std::optional<Rational> order = std::nullopt)
{
    return QExp::from_coeffs(1, 0, std::move(c), order);
}

} // namespace

TEST_CASE("finite Pochhammer symbols")
{
    CHECK(equal_to(poch(poch_finite(1, 1, 1, 2), 10), poly({1, -1, -1, 1}), 10).equal());
    CHECK(equal_to(poch(poch_finite(-1, 0, 1, 2), 10), poly({2, 2}), 10).equal());
    CHECK(equal_to(poch(poch_finite(5, 3, 2, 0), 10), QExp::one(), 10).equal());
    CHECK(poch_vanishes(poch_finite(1, 0, 1, 1)));
    CHECK(!poch_vanishes(poch_finite(1, 0, 1, 0)));
    CHECK(poch_vanishes(poch_finite(1, -2, 1, 3)));
    CHECK(!poch_vanishes(poch_finite(1, -2, 1, 2)));
}

TEST_CASE("infinite Pochhammer symbols")
{
    const auto e = poch(poch_infinite(1, 1, 1), 7);
    CHECK(equal_to(e, poly({1, -1, -1, 0, 0, 1, 0, 1}), 7).equal());
    CHECK(oracle::same(oracle::poch(-1, ratio(1, 2), 1, -1, 12), poch(poch_infinite(-1, ratio(1, 2), 1), 12), 12));
    CHECK(oracle::same(oracle::poch(1, ratio(2, 3), ratio(3, 2), -1, 10),
                       poch(poch_infinite(1, ratio(2, 3), ratio(3, 2)), 10), 10));
    // A factor with a negative exponent is allowed.
    const auto neg = poch(poch_infinite(-1, -1, 2), 8);
    CHECK(neg.valuation() == Rational(-1));
    CHECK(oracle::same(oracle::mul(oracle::poch(-1, -1, 2, 1, 8), oracle::poch(-1, 1, 2, -1, 9), 8), neg, 8));
}

TEST_CASE("theta functions")
{
    CHECK(equal_to(theta_phi(9), poly({1, 2, 0, 0, 2, 0, 0, 0, 0, 2}), 9).equal());
    CHECK(equal_to(theta_psi(10), poly({1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1}), 10).equal());
    CHECK(equal_to(theta_phi(0), QExp::one(), 0).equal());
    for (const Rational &t : {Rational(0), Rational(13), Rational(40)}) {
        const auto phi_prod =
            poch(poch_infinite(-1, 1, 2), t) * poch(poch_infinite(-1, 1, 2), t) * poch(poch_infinite(1, 2, 2), t);
        CHECK(equal_to(theta_phi(t), phi_prod, t).equal());
        CHECK(equal_to(theta_psi(t), eta_expand(make_eta_quotient(1, 0, {{1, -1}, {2, 2}}), t), t).equal());
    }
}

TEST_CASE("Jacobi triple product")
{
    const auto half = jacobi_triple(1, ratio(1, 2), 10);
    CHECK(equal_to(half.lhs, half.rhs, 10).equal());
    CHECK(!half.lhs.is_zero());
    const auto at_q = jacobi_triple(1, 1, 10);
    CHECK(at_q.lhs.is_zero());
    CHECK(at_q.rhs.is_zero());
    const auto minus = jacobi_triple(-1, 1, 10);
    CHECK(equal_to(minus.lhs, minus.rhs, 10).equal());
    CHECK(minus.lhs.coeff(0) == 2);
    const auto at_one = jacobi_triple(1, 0, 10);
    CHECK(at_one.lhs.is_zero());
    CHECK(at_one.rhs.is_zero());
}

TEST_CASE("Jacobi cube")
{
    const auto six = jacobi_cube(6);
    CHECK(equal_to(six.lhs, poly({1, -3, 0, 5, 0, 0, -7}), 6).equal());
    CHECK(equal_to(six.rhs, six.lhs, 6).equal());
    const auto zero = jacobi_cube(0);
    CHECK(equal_to(zero.lhs, QExp::one(), 0).equal());
    const auto fifteen = jacobi_cube(15);
    CHECK(equal_to(fifteen.lhs, fifteen.rhs, 15).equal());
    CHECK(fifteen.lhs.coeff(10) == 9);
    CHECK(fifteen.lhs.coeff(15) == -11);
}

TEST_CASE("eta quotients")
{
    CHECK(equal_to(eta_expand(make_eta_quotient(1, 0, {{1, -1}, {2, 2}}), 6), poly({1, 1, 0, 1, 0, 0, 1}), 6).equal());
    // 3 (q^2;q^2)^3 / (q;q)^3 against a naive product.
    const Rational t = 3;
    auto naive = oracle::mono(3, 0);
    for (int i = 0; i < 3; ++i) {
        naive = oracle::mul(naive, oracle::poch(1, 2, 2, -1, t), t);
        naive = oracle::mul(naive, oracle::inverse(oracle::poch(1, 1, 1, -1, t), t), t);
    }
    const auto e = eta_expand(make_eta_quotient(3, 0, {{1, -3}, {2, 3}}), t);
    CHECK(oracle::same(naive, e, t));
    CHECK(equal_to(e, poly({3, 9, 18, 39}), 3).equal());
    CHECK(eta_expand(make_eta_quotient(1, 0, {}), 5) == QExp::one().truncated(5));

    CHECK(weight(make_eta_quotient(1, 0, {{1, -3}, {2, 3}})) == 0);
    CHECK(weight(make_eta_quotient(1, 0, {{1, 3}, {2, -1}})) == 1);
    CHECK(weight(make_eta_quotient(1, 0, {})) == 0);
    CHECK(make_eta_quotient(1, 0, {{1, 0}, {2, 1}}).exps.size() == 1);
    CHECK_THROWS(make_eta_quotient(1, 0, {{-1, 1}}));

    const auto f = EtaQuotient::from_eta(1, 0, {{1, 3}, {2, -1}});
    CHECK(f.vshift == ratio(1, 24));
    CHECK(f.eta_residual_shift() == 0);
    CHECK(exps_string(f) == "{1:3, 2:-1}");

    const auto half = eta_expand(make_eta_quotient(1, 0, {{ratio(1, 2), 1}}), 3);
    CHECK(half.denom() == 2);
}

TEST_CASE("eta quotient json")
{
    const auto e = make_eta_quotient(3, ratio(-1, 2), {{1, -3}, {2, 3}});
    const auto j = to_json(e);
    CHECK(j.dump() == R"({"scalar":"3","vshift":"-1/2","exps":{"1":-3,"2":3}})");
    CHECK(eta_from_json(j) == e);
    const auto with_eta = eta_from_json(Json::parse(R"({"scalar":"1","vshift":"0","exps":{"1":3,"2":-1},"eta":true})"));
    CHECK(with_eta.vshift == ratio(1, 24));
}

TEST_CASE("property: Pochhammer recurrence")
{
    oracle::Gen g(21);
    for (int i = 0; i < 60; ++i) {
        const Rational c = g.rational(-3, 3, 2);
        const Rational e = g.rational(0, 3, 3);
        const Rational s = g.rational(1, 3, 3);
        if (s == 0) {
            continue;
        }
        const Rational t = 15;
        for (std::int64_t n = 0; n <= 20; ++n) {
            const auto lhs = poch(poch_finite(c, e, s, n + 1), t);
            const auto rhs = poch(poch_finite(c, e, s, n), t) * (QExp::one() - QExp::monomial(c, e + n * s));
            REQUIRE(equal_to(lhs, rhs, t).equal());
        }
    }
}

TEST_CASE("property: eta_expand is multiplicative")
{
    oracle::Gen g(22);
    const std::vector<Rational> moduli{1, 2, 3, 4, 6, 12};
    for (int i = 0; i < 30; ++i) {
        std::map<Rational, std::int64_t> a;
        std::map<Rational, std::int64_t> b;
        for (const auto &m : moduli) {
            a[m] = g.integer(-3, 3);
            b[m] = g.integer(-3, 3);
        }
        const auto ea = make_eta_quotient(g.rational(-3, 3), g.rational(-1, 1, 4), a);
        const auto eb = make_eta_quotient(g.rational(1, 3), g.rational(-1, 1, 4), b);
        const Rational t = 12;
        REQUIRE(equal_to(eta_expand(ea, t + 2) * eta_expand(eb, t + 2), eta_expand(combine(ea, eb), t), t).equal());
    }
}

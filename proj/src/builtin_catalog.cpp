#include <qseries/catalog.hpp>

namespace qseries
{

namespace
{

using Exps = std::map<Rational, std::int64_t>;

Rational r(std::int64_t p, std::int64_t q = 1)
{
    return ratio(p, q);
}

ExprPtr pinf(const Rational &c, const Rational &e, const Rational &s)
{
    return poch_expr(poch_infinite(c, e, s));
}

ExprPtr eq(const Rational &scalar, const Rational &vshift, const Exps &exps)
{
    return eta(make_eta_quotient(scalar, vshift, exps));
}

ExprPtr eta_form(const Rational &scalar, const Rational &shift, const Exps &exps)
{
    return eta(EtaQuotient::from_eta(scalar, shift, exps));
}

SumIndex nonneg(std::string name, Rational ratio = 1)
{
    return SumIndex{std::move(name), IndexRange{0, std::nullopt}, std::move(ratio)};
}

SumIndex bilateral(std::string name, Rational ratio = 1)
{
    return SumIndex{std::move(name), IndexRange{std::nullopt, std::nullopt}, std::move(ratio)};
}

// (c q^e; q^s)_{a n + b}^pow in a one-index sum.
SumPoch sp(const Rational &c, const Rational &e, const Rational &s, std::int64_t a, std::int64_t b, std::int64_t pow = 1)
{
    return SumPoch{c, e, s, AffineForm{{r(a)}, r(b)}, pow};
}

// sum_n ratio^n q^{quad n^2 / 2 + lin n + constant} num / den
SumSpec single(SumIndex ix, const Rational &quad, const Rational &lin, std::vector<SumPoch> num = {},
               std::vector<SumPoch> den = {})
{
    SumSpec s;
    s.indices = {std::move(ix)};
    s.quad = RatMatrix{{quad}};
    s.lin = {lin};
    s.num = std::move(num);
    s.den = std::move(den);
    return s;
}

ModularQuadruple quad(RatMatrix a, RatVector b, Rational c, std::vector<std::int64_t> d)
{
    return ModularQuadruple{std::move(a), std::move(b), std::move(c), std::move(d)};
}

ModularQuadruple triple(RatMatrix a, RatVector b, Rational c)
{
    return ModularQuadruple::from_triple(ModularTriple{std::move(a), std::move(b), std::move(c)});
}

ExprPtr nahm(ModularQuadruple q, bool dual = false)
{
    return nahm_ref(NahmRef{std::move(q), std::nullopt, dual});
}

struct Builder
{
    std::vector<IdentityRecord> out;

    IdentityRecord &add(std::string name, std::vector<std::string> tags, Check check, Rational order = default_catalog_order)
    {
        IdentityRecord rec;
        rec.name = std::move(name);
        rec.tags = std::move(tags);
        rec.order = std::move(order);
        rec.check = std::move(check);
        out.push_back(std::move(rec));
        return out.back();
    }

    IdentityRecord &id(std::string name, std::vector<std::string> tags, ExprPtr lhs, ExprPtr rhs,
                       Rational order = default_catalog_order)
    {
        return add(std::move(name), std::move(tags), ExprIdentity{std::move(lhs), std::move(rhs)}, std::move(order));
    }
};

RatMatrix thm_a()
{
    return RatMatrix{{1, r(-1, 2), 0}, {r(-1, 2), 1, -1}, {0, r(-1, 2), 1}};
}

RatMatrix exam_a()
{
    return RatMatrix{{2, 2, 2}, {2, 4, 4}, {1, 2, 3}};
}

RatMatrix rank4_dual_a()
{
    return RatMatrix{{2, 1, 1, 2}, {1, 2, 1, 2}, {1, 1, 2, 2}, {2, 2, 2, 4}};
}

const std::vector<std::int64_t> d221{2, 2, 1};

ExprPtr thm0_rhs()
{
    return mul({scalar(4), add({scalar(1), qpow(r(-1, 2))}), eq(1, 0, {{2, 1}, {r(1, 2), -1}})});
}

// 1/4 (3 J2/J1 + J1^3/J2)
ExprPtr ww1_rhs()
{
    return add({eq(r(3, 4), 0, {{2, 1}, {1, -1}}), eq(r(1, 4), 0, {{1, 3}, {2, -1}})});
}

// 1/4 q^{-1} (J2/J1 - J1^3/J2)
ExprPtr ww2_rhs()
{
    return add({eq(r(1, 4), -1, {{2, 1}, {1, -1}}), eq(r(-1, 4), -1, {{1, 3}, {2, -1}})});
}

// (1 + q^{-1}) (-q; q^2)_inf
ExprPtr r_product()
{
    return mul({add({scalar(1), qpow(-1)}), pinf(-1, 1, 2)});
}

// (1 + q^{-1/2}) / (q^{1/2}; q)_inf
ExprPtr s_product()
{
    return mul({add({scalar(1), qpow(r(-1, 2))}), inv(pinf(1, r(1, 2), 1))});
}

SumSpec key_even(const Rational &lin, const Rational &constant = 0)
{
    auto s = single(nonneg("k"), 2, lin, {sp(-1, 0, 1, 2, 0), sp(-1, 0, 2, 1, 0)}, {sp(1, 2, 2, 2, 0)});
    s.constant = constant;
    return s;
}

SumSpec key_odd(const Rational &lin, const Rational &constant = 0)
{
    auto s = single(nonneg("k"), 2, lin, {sp(-1, 0, 1, 2, 1), sp(-1, 1, 2, 1, 0)}, {sp(1, 2, 2, 2, 1)});
    s.constant = constant;
    return s;
}

SumSpec cor_a(const Rational &lin)
{
    return single(nonneg("n"), 2, lin, {sp(-1, 0, 1, 1, 0, 2)}, {sp(1, 1, 1, 2, 0)});
}

SumSpec cor_b(const Rational &lin)
{
    return single(nonneg("n"), 4, lin, {sp(-1, 1, 2, 1, 0, 2)}, {sp(1, 2, 2, 2, 1)});
}

void classical(Builder &b)
{
    b.id("RR-1", {"RR"}, sum_expr(single(nonneg("n"), 2, 0, {}, {sp(1, 1, 1, 1, 0)})),
         inv(mul({pinf(1, 1, 5), pinf(1, 4, 5)})), 40);
    b.id("RR-2", {"RR"}, sum_expr(single(nonneg("n"), 2, 1, {}, {sp(1, 1, 1, 1, 0)})),
         inv(mul({pinf(1, 2, 5), pinf(1, 3, 5)})), 40);

    for (const auto &[a, label] : {std::pair{r(1, 2), "1/2"}, std::pair{r(1), "1"}, std::pair{r(2), "2"}}) {
        b.id(std::string("Euler-1 z=q^") + label, {"Euler-1"},
             sum_expr(single(nonneg("n"), 0, a, {}, {sp(1, 1, 1, 1, 0)})), inv(pinf(1, a, 1)), 30);
    }
    for (const auto &[a, label] : {std::pair{r(1, 2), "1/2"}, std::pair{r(1), "1"}, std::pair{r(2), "2"}}) {
        b.id(std::string("Euler-2 z=q^") + label, {"Euler-2"},
             sum_expr(single(nonneg("n"), 1, a - r(1, 2), {}, {sp(1, 1, 1, 1, 0)})), pinf(-1, a, 1), 30);
    }

    b.id("phi-defn", {"phi-defn"}, theta(ThetaKind::phi), mul({pinf(-1, 1, 2), pinf(-1, 1, 2), pinf(1, 2, 2)}),
         40);
    b.id("psi-defn", {"psi-defn"}, theta(ThetaKind::psi), eq(1, 0, {{1, -1}, {2, 2}}), 40);

    // (q, z, q/z; q)_inf = sum_n (-1)^n q^{n(n-1)/2} z^n
    b.id("JTP z=q^1/2", {"JTP"}, mul({pinf(1, 1, 1), pinf(1, r(1, 2), 1), pinf(1, r(1, 2), 1)}),
         sum_expr(single(bilateral("n", -1), 1, 0)));
    b.id("JTP z=-q", {"JTP"}, mul({pinf(1, 1, 1), pinf(-1, 1, 1), pinf(-1, 0, 1)}),
         sum_expr(single(bilateral("n", 1), 1, r(1, 2))));

    {
        auto s = single(nonneg("n", -1), 1, r(1, 2));
        s.weight = {AffineForm{{2}, 1}};
        b.id("eq-Jacobi-id", {"Jacobi"}, eq(1, 0, {{1, 3}}), sum_expr(s));
    }
    {
        auto s = single(bilateral("n"), 3, r(1, 2));
        s.weight = {AffineForm{{6}, 1}};
        b.id("Jacobi-cor-1", {"Jacobi"}, sum_expr(s), eq(1, 0, {{1, 5}, {2, -2}}), 40);
    }
    {
        auto s = single(bilateral("n"), 6, 2);
        s.weight = {AffineForm{{3}, 1}};
        b.id("Jacobi-cor-2", {"Jacobi"}, sum_expr(s), eq(1, 0, {{1, 2}, {4, 2}, {2, -1}}), 40);
        // Weight 3n + 2 already disagrees at q^0.
        s.weight = {AffineForm{{3}, 2}};
        b.id("Jacobi-cor-2-weight-probe", {"Jacobi"}, sum_expr(s), eq(1, 0, {{1, 2}, {4, 2}, {2, -1}}), 40)
            .expect_fail = true;
    }
}

void key_identities(Builder &b)
{
    b.id("key-id-1", {"key-id"}, sum_expr(key_even(0)),
         add({eq(r(3, 2), 0, {{2, 3}, {1, -2}, {4, -1}}), eq(r(-1, 2), 0, {{1, 2}, {2, 1}, {4, -1}})}));
    b.id("key-id-2", {"key-id"}, sum_expr(key_even(2)),
         add({eq(r(1, 2), 0, {{2, 3}, {1, -2}, {4, -1}}), eq(r(1, 2), 0, {{1, 2}, {2, 1}, {4, -1}})}));
    b.id("key-id-3", {"key-id"}, sum_expr(key_odd(1)),
         add({eq(r(3, 2), 0, {{4, 1}, {1, -1}}), eq(r(1, 2), 0, {{1, 3}, {4, 1}, {2, -2}})}));
    b.id("key-id-4", {"key-id"}, sum_expr(key_odd(3, 1)),
         add({eq(r(1, 2), 0, {{4, 1}, {1, -1}}), eq(r(-1, 2), 0, {{1, 3}, {4, 1}, {2, -2}})}));

    const Exps mixed6{{2, 1}, {3, 2}, {1, -2}, {6, -1}};
    const Exps mixed12{{2, 1}, {3, 1}, {12, 1}, {1, -1}, {4, -1}, {6, -1}};
    b.id("cor-id-1", {"cor-id"}, sum_expr(cor_a(0)), add({eq(r(4, 3), 0, mixed6), eq(r(-1, 3), 0, {{1, 4}, {2, -2}})}));
    b.id("cor-id-2", {"cor-id"}, sum_expr(cor_a(1)), add({eq(r(1, 3), 0, {{1, 4}, {2, -2}}), eq(r(2, 3), 0, mixed6)}));
    b.id("cor-id-3", {"cor-id"}, sum_expr(cor_b(2)),
         add({eq(r(1, 3), 0, {{1, 2}, {4, 2}, {2, -2}}), eq(r(2, 3), 0, mixed12)}));
    b.id("cor-id-4", {"cor-id"}, sum_expr(cor_b(4)),
         add({eq(r(-1, 3), -1, {{1, 2}, {4, 2}, {2, -2}}), eq(r(1, 3), -1, mixed12)}));

    // Sums behind the key identities, each with its infinite product factor pulled in front.
    const Exps j2j1{{2, 2}, {1, -2}};
    b.id("0-S0-result", {"S0"},
         mul({pinf(-1, r(1, 2), 2),
              sum_expr(single(nonneg("k"), 2, r(-3, 2), {sp(-1, r(3, 2), 2, 1, 0)}, {sp(1, 1, 1, 2, 0)}))}),
         s_product());
    b.id("0-S1-result", {"S1"},
         mul({pinf(-1, r(-1, 2), 2),
              sum_expr(single(nonneg("k"), 2, r(-1, 2), {sp(-1, r(5, 2), 2, 1, 0)}, {sp(1, 1, 1, 2, 1)}))}),
         s_product());
    b.id("S0-result", {"S0"}, mul({pinf(-1, 2, 2), sum_expr(key_even(0))}),
         add({eq(r(3, 2), 0, j2j1), eq(r(-1, 2), 0, {{1, 2}})}));
    b.id("S1-result", {"S1"}, mul({pinf(-1, 1, 2), sum_expr(key_odd(1))}),
         add({eq(r(3, 2), 0, j2j1), eq(r(1, 2), 0, {{1, 2}})}));
    b.id("T0-result", {"T0"}, mul({pinf(-1, 2, 2), sum_expr(key_even(2))}),
         add({eq(r(1, 2), 0, j2j1), eq(r(1, 2), 0, {{1, 2}})}));
    b.id("T1-result", {"T1"}, mul({pinf(-1, 1, 2), sum_expr(key_odd(3, 1))}),
         add({eq(r(1, 2), 0, j2j1), eq(r(-1, 2), 0, {{1, 2}})}));
}

void nahm_identities(Builder &b)
{
    const std::string perm = "(n1, n2, n3) = (j, k, i)";
    b.id("thm-id-0", {"thm-id"}, nahm(quad(thm_a(), {r(-1, 2), 0, r(-1, 2)}, 0, d221)), thm0_rhs()).permutation = perm;
    b.id("thm-id-1", {"thm-id"}, nahm(quad(thm_a(), {1, -1, r(1, 2)}, 0, d221)), eq(3, 0, {{2, 3}, {1, -3}}))
        .permutation = perm;
    b.id("thm-id-2", {"thm-id"}, nahm(quad(thm_a(), {1, 0, r(1, 2)}, 0, d221)), eq(1, 0, {{2, 3}, {1, -3}}))
        .permutation = perm;
    {
        // The dual of the exam5 quadruple at B0, normalized like the first closed form above.
        auto &rec = b.id("dual-B0-probe", {"dual-probe"},
                         mul({nahm(quad(exam_a(), {0, -1, -1}, r(-1, 48), d221), true), qpow(r(-1, 16))}), thm0_rhs());
        rec.expect_fail = true;
        rec.permutation = perm;
    }

    b.id("id-exam5-3", {"exam5"}, nahm(quad(exam_a(), {0, -1, -1}, r(-1, 48), d221)),
         mul({qpow(r(-1, 48)), pinf(-1, r(1, 2), 1)}));
    b.id("WW-id-1", {"WW"}, nahm(quad(exam_a(), {1, 0, r(1, 2)}, 0, d221)), ww1_rhs());
    b.id("WW-id-2", {"WW"}, nahm(quad(exam_a(), {3, 4, r(5, 2)}, 0, d221)), ww2_rhs());

    for (const auto &[name, bvec] : {std::pair<std::string, RatVector>{"122-f b=(1/2,1,-1)", {r(1, 2), 1, -1}},
                                     std::pair<std::string, RatVector>{"122-f b=(1/2,1,0)", {r(1, 2), 1, 0}},
                                     std::pair<std::string, RatVector>{"122-f b=(-1/2,-1/2,0)", {r(-1, 2), r(-1, 2), 0}}}) {
        b.add(name, {"reindex", "122-f"}, ReindexCheck{bvec, ReindexSide::identity}, 16);
    }
    for (const auto &[name, bvec] : {std::pair<std::string, RatVector>{"M-f b=(1/2,1,0)", {r(1, 2), 1, 0}},
                                     std::pair<std::string, RatVector>{"M-f b=(5/2,3,4)", {r(5, 2), 3, 4}},
                                     std::pair<std::string, RatVector>{"M-f b=(-1,0,-1)", {-1, 0, -1}}}) {
        b.add(name, {"reindex", "M-f"}, ReindexCheck{bvec, ReindexSide::mizuno}, 16).permutation = perm;
    }
    b.add("id-transform", {"splitting"}, SplittingCheck{25}, 30);

    b.id("dual-exp-1", {"dual-exp"}, rescale_expr(nahm(triple(rank4_dual_a(), {0, r(1, 2), r(1, 2), 0}, 0)), 2),
         add({eta_form(r(3, 4), r(-1, 24), {{2, 1}, {1, -1}}), eta_form(r(1, 4), r(-1, 24), {{1, 3}, {2, -1}})}));
    b.id("dual-exp-2", {"dual-exp"}, rescale_expr(nahm(triple(rank4_dual_a(), {1, r(3, 2), r(3, 2), 2}, 0)), 2),
         add({eta_form(r(1, 4), r(-25, 24), {{2, 1}, {1, -1}}), eta_form(r(-1, 4), r(-25, 24), {{1, 3}, {2, -1}})}));

    b.id("false-dual",
         {"false-dual"},
         rescale_expr(nahm(triple(rank4_dual_a(), {r(-5, 4), r(-3, 4), -1, r(-3, 2)}, 0)), 4), r_product());
    b.id("R-exp", {"R-exp"}, nahm(quad(RatMatrix{{3, 1, 2}, {2, 2, 2}, {4, 2, 4}}, {-4, -4, -6}, 0, {2, 4, 4})),
         r_product());

    // B = (a - 1, 2a - 1) gives (-q^a; q)_inf
    const RatMatrix cw{{2, 1}, {2, 2}};
    b.id("Cao-Wang u=q^-1/2", {"Cao-Wang"}, nahm(quad(cw, {r(-3, 2), -2}, 0, {1, 2})), pinf(-1, r(-1, 2), 1));
    b.id("Cao-Wang u=q", {"Cao-Wang"}, nahm(quad(cw, {0, 1}, 0, {1, 2})), pinf(-1, 1, 1));
}

bool a_is_one(BuiltinPair p)
{
    return p == BuiltinPair::bp1 || p == BuiltinPair::bp2;
}

void bailey_records(Builder &b)
{
    b.add("q-gauss a=q b=q^2 c=q^5", {"q-gauss"}, GaussCheck{1, 2, 5}, 20);
    b.add("q-gauss a=q^1/2 b=q c=q^3", {"q-gauss"}, GaussCheck{r(1, 2), 1, 3}, 20);

    for (const auto p : {BuiltinPair::bp1, BuiltinPair::bp2, BuiltinPair::bp3, BuiltinPair::bp4}) {
        b.add("bailey-pair " + to_string(p), {"bailey"}, PairCheck{p, 1, 12});
    }
    const std::pair<BuiltinPair, Transform> lemmas[] = {
        {BuiltinPair::bp1, Transform::tbl},  {BuiltinPair::bp2, Transform::tbl},  {BuiltinPair::bp3, Transform::s2bl},
        {BuiltinPair::bp4, Transform::s2bl}, {BuiltinPair::bp1, Transform::t128}, {BuiltinPair::bp2, Transform::t128},
        {BuiltinPair::bp3, Transform::t128}, {BuiltinPair::bp4, Transform::t128},
    };
    for (const auto &[p, tr] : lemmas) {
        const bool base_q = tr == Transform::s2bl || (tr == Transform::t128 && a_is_one(p));
        const Rational scale = base_q ? 1 : 2;
        b.add("bailey-transform " + to_string(tr) + " " + to_string(p), {"bailey"}, TransformCheck{p, scale, tr});
    }
    b.add("even-finite x=q", {"finite"}, FiniteCheck{FiniteIdentity::even, 1, 10});
    b.add("odd-finite x=q^2", {"finite"}, FiniteCheck{FiniteIdentity::odd, 2, 10});
}

} // namespace

std::vector<IdentityRecord> builtin_catalog()
{
    Builder b;
    classical(b);
    key_identities(b);
    nahm_identities(b);
    bailey_records(b);
    return std::move(b.out);
}

} // namespace qseries

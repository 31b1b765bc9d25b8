#include <qseries/expr.hpp>

#include <algorithm>

namespace qseries
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExprPtr make(auto node)
{
    return std::make_shared<const Expr>(Expr{std::move(node)});
}

bool same_args(const std::vector<ExprPtr> &a, const std::vector<ExprPtr> &b)
{
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const ExprPtr &x, const ExprPtr &y) { return *x == *y; });
}

Rational power_of(const Rational &base, std::int64_t n)
{
    if (n == 0) {
        return 1;
    }
    if (base == 0) {
        if (n < 0) {
            throw Error("sum ratio is zero at a negative index");
        }
        return 0;
    }
    Rational out = 1;
    const Rational b = n < 0 ? Rational(1 / base) : base;
    for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) {
        out *= b;
    }
    return out;
}

std::int64_t poch_length(const SumSpec &s, const SumPoch &p, std::span<const std::int64_t> n)
{
    const Rational len = p.length.value(n);
    if (!is_integral(len) || len < 0) {
        std::string where;
        for (std::size_t i = 0; i < n.size(); ++i) {
            where += (i ? ", " : "") + s.indices[i].name + " = " + std::to_string(n[i]);
        }
        throw Error("Pochhammer length " + to_string(len) + " is not a nonnegative integer at " + where);
    }
    return to_int64(len);
}

QExp eval_mul(const MulNode &m, const Rational &t)
{
    if (m.args.empty()) {
        return QExp::one();
    }
    std::vector<QExp> parts;
    parts.reserve(m.args.size());
    for (const auto &a : m.args) {
        parts.push_back(eval_expr(*a, t));
        if (parts.back().is_zero() && parts.back().is_exact()) {
            return QExp();
        }
    }
    // Negative valuations elsewhere in the product eat into each factor's horizon.
    std::vector<Rational> vals;
    Rational total = 0;
    for (const auto &p : parts) {
        vals.push_back(p.valuation_bound());
        total += vals.back();
    }
    QExp out = QExp::one();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Rational others = total - vals[i];
        if (others < 0 && !parts[i].is_exact()) {
            parts[i] = eval_expr(*m.args[i], t - others);
        }
        out = out * parts[i];
    }
    return out.truncated(t);
}

QExp eval_inv(const InvNode &n, const Rational &t)
{
    QExp a = eval_expr(*n.arg, t);
    if (a.is_zero()) {
        throw Error("division by zero series");
    }
    const Rational v = *a.valuation();
    if (v > 0 && !a.is_exact()) {
        a = eval_expr(*n.arg, t + 2 * v);
    }
    return invert(a, t);
}

} // namespace

Rational AffineForm::value(std::span<const std::int64_t> n) const
{
    Rational v = constant;
    for (std::size_t i = 0; i < coeffs.size() && i < n.size(); ++i) {
        v += coeffs[i] * n[i];
    }
    return v;
}

bool operator==(const Expr &a, const Expr &b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const MulNode &x) { return same_args(x.args, std::get<MulNode>(b.node).args); },
            [&](const AddNode &x) { return same_args(x.args, std::get<AddNode>(b.node).args); },
            [&](const NegNode &x) { return *x.arg == *std::get<NegNode>(b.node).arg; },
            [&](const InvNode &x) { return *x.arg == *std::get<InvNode>(b.node).arg; },
            [&](const RescaleNode &x) {
                const auto &y = std::get<RescaleNode>(b.node);
                return x.factor == y.factor && *x.arg == *y.arg;
            },
            [&](const auto &x) { return x == std::get<std::decay_t<decltype(x)>>(b.node); },
        },
        a.node);
}

ExprPtr scalar(const Rational &c)
{
    return make(ScalarNode{c});
}
ExprPtr qpow(const Rational &e)
{
    return make(QPowNode{e});
}
ExprPtr poch_expr(const PochSpec &spec)
{
    return make(PochNode{spec});
}
ExprPtr nahm_ref(NahmRef ref)
{
    return make(std::move(ref));
}
ExprPtr sum_expr(SumSpec spec)
{
    return make(std::move(spec));
}
ExprPtr mul(std::vector<ExprPtr> args)
{
    return make(MulNode{std::move(args)});
}
ExprPtr add(std::vector<ExprPtr> args)
{
    return make(AddNode{std::move(args)});
}
ExprPtr neg(ExprPtr e)
{
    return make(NegNode{std::move(e)});
}
ExprPtr inv(ExprPtr e)
{
    return make(InvNode{std::move(e)});
}
ExprPtr rescale_expr(ExprPtr e, const Rational &s)
{
    if (s <= 0) {
        throw Error("rescale factor must be positive");
    }
    return make(RescaleNode{std::move(e), s});
}
ExprPtr theta(ThetaKind kind, bool negate)
{
    return make(ThetaNode{kind, negate});
}
ExprPtr eta(const EtaQuotient &e)
{
    return make(EtaNode{e});
}

QExp eval_sum(const SumSpec &s, const Rational &t, std::size_t *terms)
{
    const auto r = s.indices.size();
    if (r == 0) {
        throw Error("sum has no indices");
    }
    if (s.quad.rows() != r || s.quad.cols() != r || s.lin.size() != r) {
        throw Error("sum: exponent form does not match the index count");
    }
    for (const auto *list : {&s.num, &s.den}) {
        for (const auto &p : *list) {
            if (p.arg_exp < 0 || p.step <= 0 || p.pow < 0) {
                throw Error("sum: Pochhammer factors need arg_exp >= 0, step > 0 and pow >= 0");
            }
        }
    }
    std::vector<IndexRange> ranges;
    for (const auto &ix : s.indices) {
        ranges.push_back(ix.range);
    }
    const LatticeEnumerator lattice(QuadraticForm{s.quad, s.lin, s.constant}, ranges);
    QExp out = QExp::zero_to(t);
    std::size_t count = 0;
    lattice.for_each(t, [&](std::span<const std::int64_t> n, std::int64_t) {
        Rational c = 1;
        for (std::size_t i = 0; i < r; ++i) {
            c *= power_of(s.indices[i].ratio, n[i]);
        }
        for (const auto &w : s.weight) {
            c *= w.value(n);
        }
        // Lengths are validated even when the term vanishes.
        std::vector<std::int64_t> num_len;
        std::vector<std::int64_t> den_len;
        for (const auto &p : s.num) {
            num_len.push_back(poch_length(s, p, n));
        }
        for (const auto &p : s.den) {
            den_len.push_back(poch_length(s, p, n));
        }
        ++count;
        if (c == 0) {
            return;
        }
        const Rational e = lattice.form().value(n);
        const Rational inner = t - e;
        QExp term = QExp::constant(c);
        for (std::size_t k = 0; k < s.num.size(); ++k) {
            const auto &p = s.num[k];
            const QExp f = poch(poch_finite(p.coeff, p.arg_exp, p.step, num_len[k]), inner);
            for (std::int64_t j = 0; j < p.pow; ++j) {
                term = (term * f).truncated(inner);
            }
            if (term.is_zero() && term.is_exact()) {
                return;
            }
        }
        QExp den = QExp::one();
        for (std::size_t k = 0; k < s.den.size(); ++k) {
            const auto &p = s.den[k];
            const PochSpec spec = poch_finite(p.coeff, p.arg_exp, p.step, den_len[k]);
            if (poch_vanishes(spec)) {
                throw Error("sum: denominator Pochhammer vanishes");
            }
            const QExp f = poch(spec, inner);
            for (std::int64_t j = 0; j < p.pow; ++j) {
                den = (den * f).truncated(inner);
            }
        }
        if (!s.den.empty()) {
            term = (term * invert(den, inner)).truncated(inner);
        }
        out = out + term.shifted(e);
    });
    if (terms) {
        *terms = count;
    }
    return out.truncated(t);
}

QExp eval_expr(const Expr &e, const Rational &t)
{
    return std::visit(
        overloaded{
            [&](const ScalarNode &n) { return QExp::constant(n.value); },
            [&](const QPowNode &n) { return QExp::monomial(1, n.exponent); },
            [&](const PochNode &n) { return poch(n.spec, t); },
            [&](const NahmRef &n) {
                const ModularQuadruple q = n.dual ? dual_quadruple(n.quadruple) : n.quadruple;
                return gnahm_expand(q, t, n.spec);
            },
            [&](const SumSpec &n) { return eval_sum(n, t); },
            [&](const MulNode &n) { return eval_mul(n, t); },
            [&](const AddNode &n) {
                QExp out = QExp();
                for (const auto &a : n.args) {
                    out = out + eval_expr(*a, t);
                }
                return out.truncated(t);
            },
            [&](const NegNode &n) { return -eval_expr(*n.arg, t); },
            [&](const InvNode &n) { return eval_inv(n, t); },
            [&](const RescaleNode &n) { return rescale(eval_expr(*n.arg, t / n.factor), n.factor); },
            [&](const ThetaNode &n) {
                const QExp th = n.kind == ThetaKind::phi ? theta_phi(t) : theta_psi(t);
                return n.negate ? negate_q(th) : th;
            },
            [&](const EtaNode &n) { return eta_expand(n.quotient, t); },
        },
        e.node);
}

} // namespace qseries

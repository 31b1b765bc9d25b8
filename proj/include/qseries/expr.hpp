#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <qseries/lattice.hpp>
#include <qseries/nahm.hpp>
#include <qseries/products.hpp>
#include <qseries/series.hpp>

namespace qseries
{

// constant + coeffs . n over the indices of a SumSpec.
struct AffineForm
{
    RatVector coeffs;
    Rational constant = 0;

    Rational value(std::span<const std::int64_t> n) const;

    friend bool operator==(const AffineForm &, const AffineForm &) = default;
};

// (coeff q^arg_exp; q^step)_{length(n)} raised to pow.
struct SumPoch
{
    Rational coeff = 1;
    Rational arg_exp = 1;
    Rational step = 1;
    AffineForm length;
    std::int64_t pow = 1;

    friend bool operator==(const SumPoch &, const SumPoch &) = default;
};

struct SumIndex
{
    std::string name;
    IndexRange range;
    // The summand carries ratio^{n_i}.
    Rational ratio = 1;

    friend bool operator==(const SumIndex &, const SumIndex &) = default;
};

// sum_n prod_i ratio_i^{n_i} * prod(weight) * q^{(1/2) n^T quad n + lin . n + constant}
//       * prod(num) / prod(den)
struct SumSpec
{
    std::vector<SumIndex> indices;
    RatMatrix quad;
    RatVector lin;
    Rational constant = 0;
    std::vector<AffineForm> weight;
    std::vector<SumPoch> num;
    std::vector<SumPoch> den;

    friend bool operator==(const SumSpec &, const SumSpec &) = default;
};

struct NahmRef
{
    ModularQuadruple quadruple;
    std::optional<MonomialVector> spec;
    // Evaluate the dual quadruple instead.
    bool dual = false;

    friend bool operator==(const NahmRef &, const NahmRef &) = default;
};

enum class ThetaKind
{
    phi,
    psi,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ScalarNode
{
    Rational value;
    friend bool operator==(const ScalarNode &, const ScalarNode &) = default;
};
struct QPowNode
{
    Rational exponent;
    friend bool operator==(const QPowNode &, const QPowNode &) = default;
};
struct PochNode
{
    PochSpec spec;
    friend bool operator==(const PochNode &, const PochNode &) = default;
};
struct ThetaNode
{
    ThetaKind kind = ThetaKind::phi;
    bool negate = false;
    friend bool operator==(const ThetaNode &, const ThetaNode &) = default;
};
struct EtaNode
{
    EtaQuotient quotient;
    friend bool operator==(const EtaNode &, const EtaNode &) = default;
};
struct MulNode
{
    std::vector<ExprPtr> args;
};
struct AddNode
{
    std::vector<ExprPtr> args;
};
struct NegNode
{
    ExprPtr arg;
};
struct InvNode
{
    ExprPtr arg;
};
struct RescaleNode
{
    ExprPtr arg;
    Rational factor;
};

struct Expr
{
    std::variant<ScalarNode, QPowNode, PochNode, NahmRef, SumSpec, MulNode, AddNode, NegNode, InvNode, RescaleNode,
                 ThetaNode, EtaNode>
        node;
};

bool operator==(const Expr &a, const Expr &b);

// Builders.
ExprPtr scalar(const Rational &c);
ExprPtr qpow(const Rational &e);
ExprPtr poch_expr(const PochSpec &spec);
ExprPtr nahm_ref(NahmRef ref);
ExprPtr sum_expr(SumSpec spec);
ExprPtr mul(std::vector<ExprPtr> args);
ExprPtr add(std::vector<ExprPtr> args);
ExprPtr neg(ExprPtr e);
ExprPtr inv(ExprPtr e);
ExprPtr rescale_expr(ExprPtr e, const Rational &s);
ExprPtr theta(ThetaKind kind, bool negate = false);
ExprPtr eta(const EtaQuotient &e);

// Exact expansion valid for every exponent <= t.
QExp eval_expr(const Expr &e, const Rational &t);

// Evaluates the sum alone; also reports how many lattice points contributed.
QExp eval_sum(const SumSpec &s, const Rational &t, std::size_t *terms = nullptr);

} // namespace qseries

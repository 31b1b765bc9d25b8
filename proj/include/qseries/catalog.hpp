#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <qseries/bailey.hpp>
#include <qseries/expr.hpp>
#include <qseries/json_io.hpp>
#include <qseries/nahm.hpp>

namespace qseries
{

constexpr int default_catalog_order = 25;

struct ExprIdentity
{
    ExprPtr lhs;
    ExprPtr rhs;
};

struct ReindexCheck
{
    MonomialVector b;
    ReindexSide side = ReindexSide::identity;
};

struct SplittingCheck
{
    std::int64_t n_max = 0;
};

struct PairCheck
{
    BuiltinPair pair = BuiltinPair::bp1;
    Rational scale = 1;
    std::int64_t n_max = 0;
};

struct TransformCheck
{
    BuiltinPair pair = BuiltinPair::bp1;
    Rational scale = 1;
    Transform transform = Transform::t128;
};

struct FiniteCheck
{
    FiniteIdentity which = FiniteIdentity::even;
    Rational x_exp = 1;
    std::int64_t n_max = 0;
};

struct GaussCheck
{
    Rational a_exp;
    Rational b_exp;
    Rational c_exp;
};

using Check = std::variant<ExprIdentity, ReindexCheck, SplittingCheck, PairCheck, TransformCheck, FiniteCheck, GaussCheck>;

struct IdentityRecord
{
    std::string name;
    std::vector<std::string> tags;
    Rational order = default_catalog_order;
    // Free-form note on how the summation variables map onto the data's coordinates.
    std::string permutation;
    bool expect_fail = false;
    Check check;
};

enum class Status
{
    pass,
    fail,
    expected_fail,
    unexpected_pass,
    error,
};

std::string to_string(Status s);

struct Report
{
    std::string name;
    Status status = Status::pass;
    Rational order;
    std::optional<Difference> difference;
    std::optional<std::int64_t> index; // failing member of an indexed check
    std::string message;
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
    double seconds = 0;

    // Counts against the run: a failure, an error, or an unexpected pass.
    bool bad() const
    {
        return status == Status::fail || status == Status::error || status == Status::unexpected_pass;
    }
};

// Sum side against product side of q-Gauss at a = q^a_exp, b = q^b_exp, c = q^c_exp.
// Requires a_exp, b_exp >= 0 and c_exp > a_exp + b_exp.
CheckResult q_gauss_check(const Rational &a_exp, const Rational &b_exp, const Rational &c_exp, const Rational &t);

Report verify_identity(const IdentityRecord &rec, std::optional<Rational> order_override = std::nullopt);

struct CatalogOptions
{
    std::optional<Rational> order_override;
    // Substring matched against the name and every tag; empty keeps all records.
    std::string filter;
    unsigned workers = 1;
};

struct Summary
{
    std::vector<Report> reports;

    std::size_t count(Status s) const;
    bool ok() const;
};

std::vector<IdentityRecord> filter_records(const std::vector<IdentityRecord> &records, const std::string &filter);
Summary run_catalog(const std::vector<IdentityRecord> &records, const CatalogOptions &options = {});

// Human-readable summary; timings are included only when asked for.
std::string format_summary(const Summary &s, bool with_timing = false);

Json to_json(const IdentityRecord &r);
IdentityRecord record_from_json(const Json &j);
Json catalog_to_json(const std::vector<IdentityRecord> &records);
// Errors carry the index and name of the offending record.
std::vector<IdentityRecord> catalog_from_json(const Json &j);
std::vector<IdentityRecord> load_catalog(const std::string &path);

// Every identity of the built-in collection.
std::vector<IdentityRecord> builtin_catalog();

} // namespace qseries

#pragma once

#include <json.hpp>

#include <qseries/expr.hpp>
#include <qseries/nahm.hpp>
#include <qseries/products.hpp>
#include <qseries/series.hpp>

namespace qseries
{

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational &r);
// Accepts "p/q" strings and plain integers.
Rational rational_from_json(const Json &j);

// {"denom": D, "lo": n, "order": "p/q" | "inf", "coeffs": ["p/q", ...]}
Json to_json(const QExp &s);
QExp qexp_from_json(const Json &j);

// {"scalar": "p/q", "vshift": "p/q", "exps": {"1": -3, "2": 3}}
Json to_json(const EtaQuotient &e);
EtaQuotient eta_from_json(const Json &j);

// {"A": [["2"]], "B": ["0"], "C": "-1/60", "D": [1]}; D is omitted for a plain triple.
Json to_json(const ModularTriple &t);
Json to_json(const ModularQuadruple &q);
ModularQuadruple quadruple_from_json(const Json &j);
// True when the document carries no "D" (or an all-ones D).
bool is_plain_triple(const Json &j);

Json to_json(const PochSpec &p);
PochSpec poch_from_json(const Json &j);

// Tagged union: {"op": "mul", "args": [...]}, {"op": "scalar", "value": "3"}, ...
Json to_json(const Expr &e);
ExprPtr expr_from_json(const Json &j);

RatMatrix matrix_from_json(const Json &j);
RatVector vector_from_json(const Json &j);
Json to_json(const RatMatrix &m);
Json to_json(const RatVector &v);

} // namespace qseries

#pragma once

#include "ffdyn/lattice.hpp"

#include <json.hpp>

namespace ffdyn {

using json = nlohmann::json;

/// {"p": 5, "m": 1}
const GaloisField& field_from_json(const json& j);
json field_to_json(const GaloisField& F);

/// "[a : b]" or ["a", "b", m]; m is the constant-field extension degree.
ProjPoint point_from_json(const GaloisField& F, const json& j);
json point_to_json(const ProjPoint& x);

/// "[a1, a2, a3, a4, a6]", "[a4, a6]", or {"a1": .., "a6": ..} (missing
/// coefficients are 0).
EllipticCurve curve_from_json(const GaloisField& F, const json& j);
json curve_to_json(const EllipticCurve& E);
/// "O", "(x, y)", or {"x": .., "y": ..}.
EPoint epoint_from_json(const GaloisField& F, const json& j);
json epoint_to_json(const EPoint& P);

/// "3/4" or an integer.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

/// {"place": "t", "type": "I2"} or {"place": .., "matrix": [[..]], "mult": [..], "identity": 0}.
FiberConfig fiber_from_json(const GaloisField& F, const json& j);
json fiber_to_json(const FiberConfig& cfg);

/// Place labels are normalized to format_place(parse_place(.)). The field
/// comes from j["field"] unless given.
Model model_from_json(const json& j, const GaloisField* field = nullptr);
ModelDivisor divisor_from_json(const Model& model, const json& j);
json divisor_to_json(const ModelDivisor& D);

/// Canonical label for a place written in any accepted spelling.
std::string normalize_place(const GaloisField& F, std::string_view label);

}  // namespace ffdyn

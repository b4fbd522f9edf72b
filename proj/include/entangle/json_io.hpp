#pragma once

#include "entangle/separability.hpp"
#include "entangle/state.hpp"
#include "entangle/types.hpp"
#include "entangle/witness.hpp"

#include <json.hpp>

#include <string>

namespace entangle {

/// Matrix wire format: {"rows": r, "cols": c, "data": [[re, im], ...]},
/// data row-major. Bipartite states add {"dim_a": M, "dim_b": N} and may
/// carry a free-form "metadata" object.

nlohmann::json matrix_to_json(const Matrix& m);

/// Throws std::invalid_argument naming the row/column of the first bad entry.
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const BipartiteState& state);
BipartiteState state_from_json(const nlohmann::json& j, const ToleranceConfig& tol = {});

nlohmann::json verdict_to_json(const Verdict& v);

nlohmann::json witness_to_json(const WitnessOperator& w);
WitnessOperator witness_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace entangle

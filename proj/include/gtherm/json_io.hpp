#pragma once

#include <string>

#include <json.hpp>

#include "gtherm/protocol.hpp"

namespace gtherm {

// Matrix schema: {"dim": d, "re": [[...]], "im": [[...]]}, row-major d x d;
// "im" may be omitted for real matrices.  Rejection messages name the
// offending entry indices.
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, const std::string& what);

HermitianOperator hermitian_from_json(const nlohmann::json& j,
                                      const std::string& what = "matrix");
DensityMatrix density_from_json(const nlohmann::json& j,
                                const std::string& what = "initial_state");

// {"times": [...], "hamiltonians": [{...}, ...], "initial_state": {...}}
ProtocolGrid protocol_grid_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace gtherm

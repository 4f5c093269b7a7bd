#include "gtherm/json_io.hpp"

#include <fstream>

namespace gtherm {

namespace {

Eigen::MatrixXd real_part_from_json(const nlohmann::json& rows, Eigen::Index dim,
                                    const std::string& what, const char* key) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    throw Error(ErrorKind::InvalidParams,
                what + ": '" + key + "' must be a " + std::to_string(dim) + "-row array, got " +
                    std::to_string(rows.is_array() ? rows.size() : 0) + " rows");
  }
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw Error(ErrorKind::InvalidParams,
                  what + ": '" + key + "[" + std::to_string(i) + "]' must have " +
                      std::to_string(dim) + " entries");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw Error(ErrorKind::InvalidParams,
                    what + ": '" + key + "[" + std::to_string(i) + "][" + std::to_string(j) +
                        "]' is not a number");
      }
      m(i, j) = cell.get<double>();
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) {
    throw Error(ErrorKind::InvalidParams, what + ": expected a JSON object");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw Error(ErrorKind::InvalidParams, what + ": missing integer field 'dim'");
  }
  const auto dim = j["dim"].get<long long>();
  if (dim < 1) throw Error(ErrorKind::InvalidParams, what + ": 'dim' must be >= 1");
  const Eigen::Index d = static_cast<Eigen::Index>(dim);

  if (!j.contains("re")) {
    throw Error(ErrorKind::InvalidParams, what + ": missing field 're'");
  }
  const Eigen::MatrixXd re = real_part_from_json(j["re"], d, what, "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
  if (j.contains("im")) im = real_part_from_json(j["im"], d, what, "im");

  return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

HermitianOperator hermitian_from_json(const nlohmann::json& j, const std::string& what) {
  const Eigen::MatrixXcd m = matrix_from_json(j, what);
  try {
    return validate_hermitian(m);
  } catch (const Error& e) {
    throw Error(e.kind(), what + ": " + e.what());
  }
}

DensityMatrix density_from_json(const nlohmann::json& j, const std::string& what) {
  const Eigen::MatrixXcd m = matrix_from_json(j, what);
  try {
    return validate_density(m);
  } catch (const Error& e) {
    throw Error(e.kind(), what + ": " + e.what());
  }
}

ProtocolGrid protocol_grid_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("times") || !j.contains("hamiltonians") ||
      !j.contains("initial_state")) {
    throw Error(ErrorKind::InvalidParams,
                "protocol grid needs 'times', 'hamiltonians' and 'initial_state'");
  }
  ProtocolGrid grid;
  if (!j["times"].is_array()) {
    throw Error(ErrorKind::InvalidParams, "'times' must be an array");
  }
  for (const auto& t : j["times"]) {
    if (!t.is_number()) throw Error(ErrorKind::InvalidParams, "'times' entries must be numbers");
    grid.times.push_back(t.get<double>());
  }
  if (!j["hamiltonians"].is_array()) {
    throw Error(ErrorKind::InvalidParams, "'hamiltonians' must be an array");
  }
  std::size_t idx = 0;
  for (const auto& h : j["hamiltonians"]) {
    grid.hamiltonians.push_back(
        hermitian_from_json(h, "hamiltonians[" + std::to_string(idx) + "]"));
    ++idx;
  }
  grid.initial_state = density_from_json(j["initial_state"]);
  return grid;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParams, path + ": " + e.what());
  }
  return j;
}

}  // namespace gtherm

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gtherm/models.hpp"
#include "gtherm/thermo.hpp"

namespace gtherm {

struct ScanRow {
  double g0{0.0};
  double delta_g{0.0};
  double w_inv{0.0};
  double q_c{0.0};
  double q_inv{0.0};
  double w_u{0.0};
  double q_u{0.0};
  double w_tpm{0.0};
  double delta_u{0.0};
  double s_u{0.0};
  double s_d{0.0};
  double s_gt{0.0};
  double s_gamma{0.0};
  double coherence{0.0};
  double e0{0.0};
  double ground_gap{0.0};
  long long ground_degeneracy{1};
};

// CSV column names, emission order.
const std::array<const char*, 17>& csv_columns();

// Named field access (for differentiate and tests); throws UnknownColumn.
double scan_row_field(const ScanRow& row, const std::string& column);

enum class ScanModel { Lz, Lmg, Custom };

struct ScanRequest {
  ScanModel model{ScanModel::Lz};
  LZParams lz;                // g ignored (grid supplies it)
  LMGParams lmg;              // g ignored
  HermitianOperator custom_h0;  // H(g) = custom_h0 + g * custom_h1
  HermitianOperator custom_h1;
  double g0_min{0.0};
  double g0_max{1.0};
  int steps{2};               // >= 2 grid points, inclusive of both ends
  double delta_g{0.0};
  double deg_tol{0.0};        // <= 0 selects the default clustering tolerance
  QuConvention qu{QuConvention::FirstLaw};
  int threads{0};             // <= 0 selects available parallelism
  bool continuity{true};      // ground-state continuity hints (forces a
                              // sequential pass for lmg/custom)
};

std::vector<ScanRow> scan(const ScanRequest& req);

// Finite differences of one column over a uniform g0 grid; central interior
// stencils, one-sided at the ends.  order 1 or 2.
std::vector<std::pair<double, double>> differentiate(const std::vector<ScanRow>& rows,
                                                     const std::string& column,
                                                     int order);

struct TwirlCheckReport {
  double frobenius_error{0.0};
  double std_error{0.0};
  bool pass{false};
};

// Builds a random Hermitian with the forced cluster pattern plus a random
// density matrix and compares mc_twirl against the closed-form twirl.
TwirlCheckReport twirl_check(int dim, const std::vector<int>& pattern, int n_samples,
                             std::uint64_t seed);

// Exact 17-column CSV: header, '.' decimal separator, '\n' line endings,
// shortest round-trip double formatting at full precision.
void emit_csv(const std::vector<ScanRow>& rows, const std::string& path);
std::string csv_to_string(const std::vector<ScanRow>& rows);
std::vector<ScanRow> parse_csv(const std::string& path);

}  // namespace gtherm

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gtherm/error.hpp"

namespace gtherm {

using Complex = std::complex<double>;

// A validated Hermitian matrix (exactly symmetrized at construction).
struct HermitianOperator {
  Eigen::MatrixXcd mat;

  Eigen::Index dim() const { return mat.rows(); }
};

// Default hermiticity tolerance: 1e-12 * max(1, max-abs-entry).
double default_hermiticity_tol(const Eigen::MatrixXcd& m);

// Checks squareness and hermiticity within tol, then returns (M + M†)/2.
// Rejection messages name the offending entry indices.
HermitianOperator validate_hermitian(const Eigen::MatrixXcd& m, double tol);
HermitianOperator validate_hermitian(const Eigen::MatrixXcd& m);

// A d x d complex matrix with unit trace, Hermitian and positive
// semidefinite within tolerance.
struct DensityMatrix {
  Eigen::MatrixXcd mat;

  Eigen::Index dim() const { return mat.rows(); }
};

// Full validation (trace, hermiticity, minimum eigenvalue >= -psd_tol).
DensityMatrix validate_density(const Eigen::MatrixXcd& m,
                               double trace_tol = 1e-12,
                               double psd_tol = 1e-10);

// |psi><psi| from a (not necessarily normalized) state vector.
DensityMatrix pure_state(const Eigen::VectorXcd& psi);

// Maximally mixed state 1/d.
DensityMatrix maximally_mixed(Eigen::Index dim);

}  // namespace gtherm

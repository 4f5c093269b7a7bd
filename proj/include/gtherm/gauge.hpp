#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "gtherm/spectral.hpp"

namespace gtherm {

// Haar-random unitary via QR of a complex Ginibre matrix with the R-diagonal
// phase correction.
Eigen::MatrixXcd haar_unitary(Eigen::Index n, std::mt19937_64& rng);

// Block-diagonal unitary commuting with the clustered Hamiltonian: one
// independent unitary per degenerate cluster.
struct GaugeElement {
  std::vector<Eigen::MatrixXcd> blocks;  // one per cluster, n_k x n_k
  Eigen::MatrixXcd matrix;               // assembled d x d, energy basis
};

GaugeElement sample_gauge_element(const DegeneracyStructure& gamma, std::uint64_t seed);

// Closed-form twirl: block-averages the diagonal of rhoE over each cluster
// and drops everything else.
DensityMatrix twirl(const DensityMatrix& rho_energy, const DegeneracyStructure& gamma);

// Off-diagonal entries zeroed, trace untouched.
DensityMatrix dephase(const DensityMatrix& rho_energy);

// rhoE - dephase(rhoE): zero diagonal, traceless.
Eigen::MatrixXcd coherence_part(const DensityMatrix& rho_energy);

struct McTwirlResult {
  DensityMatrix estimate;
  double std_error{0.0};  // element-wise standard errors, Frobenius-aggregated
};

// Monte-Carlo estimate of the twirl; test oracle only, never on the hot path.
McTwirlResult mc_twirl(const DensityMatrix& rho_energy, const DegeneracyStructure& gamma,
                       int n_samples, std::uint64_t seed);

bool is_invariant(const DensityMatrix& rho_energy, const DegeneracyStructure& gamma,
                  double tol);

}  // namespace gtherm

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gtherm/hermitian.hpp"

namespace gtherm {

// One group of eigenvalues closer to each other than the clustering
// tolerance. `begin` indexes into the ascending eigenvalue list.
struct EigenCluster {
  double value{0.0};      // mean eigenvalue of the cluster
  Eigen::Index begin{0};
  Eigen::Index count{0};
};

struct DegeneracyStructure {
  std::vector<EigenCluster> clusters;
  Eigen::Index dim{0};

  Eigen::Index count() const { return static_cast<Eigen::Index>(clusters.size()); }
  bool has_degeneracy() const {
    for (const auto& c : clusters)
      if (c.count > 1) return true;
    return false;
  }
};

struct SpectralData {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd basis;        // columns = eigenvectors, deterministic phases
  DegeneracyStructure structure;

  Eigen::Index dim() const { return eigenvalues.size(); }
};

// Default clustering tolerance: 1e-8 * max(1, spectral range).
double default_clustering_tol(const Eigen::VectorXd& eigenvalues_ascending);

// Greedy gap scan over an ascending eigenvalue list: a new cluster starts
// whenever a consecutive gap exceeds tol.
DegeneracyStructure cluster_eigenvalues(const Eigen::VectorXd& eigenvalues_ascending,
                                        double tol);

// Eigendecomposition with ascending eigenvalues, clustered degeneracies and a
// deterministic phase convention (largest-magnitude component of each
// eigenvector made real positive).
SpectralData decompose(const HermitianOperator& h, double deg_tol);
SpectralData decompose(const HermitianOperator& h);  // auto tolerance

// u† rho u
DensityMatrix to_energy_basis(const DensityMatrix& rho, const SpectralData& s);

// u† A u for an arbitrary operator.
Eigen::MatrixXcd operator_to_energy_basis(const Eigen::MatrixXcd& a, const SpectralData& s);

// Projector onto the k-th cluster (0-based), expressed in the energy basis.
Eigen::MatrixXcd projector(const SpectralData& s, Eigen::Index k);

}  // namespace gtherm

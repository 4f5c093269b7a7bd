#include "gtherm/spectral.hpp"

#include <cmath>
#include <string>

namespace gtherm {

double default_clustering_tol(const Eigen::VectorXd& w) {
  const double range = w.size() > 0 ? w(w.size() - 1) - w(0) : 0.0;
  return 1e-8 * std::max(1.0, range);
}

DegeneracyStructure cluster_eigenvalues(const Eigen::VectorXd& w, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidParams, "clustering tolerance must be positive and finite");
  }
  DegeneracyStructure out;
  out.dim = w.size();
  if (w.size() == 0) return out;

  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= w.size(); ++i) {
    if (i == w.size() || w(i) - w(i - 1) > tol) {
      EigenCluster c;
      c.begin = begin;
      c.count = i - begin;
      c.value = w.segment(begin, c.count).mean();
      out.clusters.push_back(c);
      begin = i;
    }
  }
  return out;
}

SpectralData decompose(const HermitianOperator& h, double deg_tol) {
  if (!(deg_tol > 0.0) || !std::isfinite(deg_tol)) {
    throw Error(ErrorKind::InvalidParams, "deg_tol must be positive and finite");
  }
  SpectralData s;
  if (h.mat.imag().isZero(0.0)) {
    // real symmetric path, noticeably faster for the spin models
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.mat.real());
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::EigensolverFailure,
                  "eigendecomposition did not converge (dim " + std::to_string(h.dim()) + ")");
    }
    s.eigenvalues = es.eigenvalues();
    s.basis = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.mat);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::EigensolverFailure,
                  "eigendecomposition did not converge (dim " + std::to_string(h.dim()) + ")");
    }
    s.eigenvalues = es.eigenvalues();
    s.basis = es.eigenvectors();
  }

  // phase convention: largest-magnitude component real positive
  for (Eigen::Index j = 0; j < s.basis.cols(); ++j) {
    Eigen::Index imax = 0;
    s.basis.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex c = s.basis(imax, j);
    const double mag = std::abs(c);
    if (mag > 0.0) s.basis.col(j) *= std::conj(c) / mag;
  }

  s.structure = cluster_eigenvalues(s.eigenvalues, deg_tol);
  return s;
}

SpectralData decompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.mat, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "eigendecomposition did not converge");
  }
  return decompose(h, default_clustering_tol(es.eigenvalues()));
}

DensityMatrix to_energy_basis(const DensityMatrix& rho, const SpectralData& s) {
  if (rho.dim() != s.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "state dim " + std::to_string(rho.dim()) + " vs spectral dim " +
                    std::to_string(s.dim()));
  }
  return DensityMatrix{s.basis.adjoint() * rho.mat * s.basis};
}

Eigen::MatrixXcd operator_to_energy_basis(const Eigen::MatrixXcd& a, const SpectralData& s) {
  if (a.rows() != s.dim() || a.cols() != s.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "operator does not match spectral dimension");
  }
  return s.basis.adjoint() * a * s.basis;
}

Eigen::MatrixXcd projector(const SpectralData& s, Eigen::Index k) {
  if (k < 0 || k >= s.structure.count()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "cluster " + std::to_string(k) + " of " + std::to_string(s.structure.count()));
  }
  const EigenCluster& c = s.structure.clusters[static_cast<std::size_t>(k)];
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(s.dim(), s.dim());
  p.block(c.begin, c.begin, c.count, c.count) =
      Eigen::MatrixXcd::Identity(c.count, c.count);
  return p;
}

}  // namespace gtherm

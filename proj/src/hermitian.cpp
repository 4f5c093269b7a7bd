#include "gtherm/hermitian.hpp"

#include <cmath>
#include <string>

namespace gtherm {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidJ: return "InvalidJ";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::DegeneracyCrossing: return "DegeneracyCrossing";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NonUniformGrid: return "NonUniformGrid";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::InvalidPattern: return "InvalidPattern";
    case ErrorKind::NonFiniteParameter: return "NonFiniteParameter";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

double default_hermiticity_tol(const Eigen::MatrixXcd& m) {
  const double max_abs = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  return 1e-12 * std::max(1.0, max_abs);
}

HermitianOperator validate_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorKind::NotSquare,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::NonFiniteParameter, "matrix has non-finite entries");
  }
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      const double defect = std::abs(m(i, j) - std::conj(m(j, i)));
      if (defect > worst) {
        worst = defect;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > tol) {
    throw Error(ErrorKind::NotHermitian,
                "entries (" + std::to_string(wi) + "," + std::to_string(wj) + ") and (" +
                    std::to_string(wj) + "," + std::to_string(wi) + ") differ from conjugates by " +
                    std::to_string(worst));
  }
  return HermitianOperator{(m + m.adjoint()) / 2.0};
}

HermitianOperator validate_hermitian(const Eigen::MatrixXcd& m) {
  return validate_hermitian(m, default_hermiticity_tol(m));
}

DensityMatrix validate_density(const Eigen::MatrixXcd& m, double trace_tol, double psd_tol) {
  HermitianOperator h = validate_hermitian(m, 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()));
  const double tr_defect = std::abs(h.mat.trace() - Complex(1.0, 0.0));
  if (tr_defect > trace_tol) {
    throw Error(ErrorKind::NotDensityMatrix,
                "trace differs from 1 by " + std::to_string(tr_defect));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.mat, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "density matrix eigendecomposition failed");
  }
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -psd_tol) {
    throw Error(ErrorKind::NotDensityMatrix,
                "minimum eigenvalue " + std::to_string(min_eig) + " below -" +
                    std::to_string(psd_tol));
  }
  return DensityMatrix{std::move(h.mat)};
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw Error(ErrorKind::InvalidParams, "state vector has zero or non-finite norm");
  }
  return DensityMatrix{(psi * psi.adjoint()) / n2};
}

DensityMatrix maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidParams, "dimension must be positive");
  return DensityMatrix{Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim)};
}

}  // namespace gtherm

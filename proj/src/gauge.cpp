#include "gtherm/gauge.hpp"

#include <cmath>
#include <string>

namespace gtherm {

Eigen::MatrixXcd haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

GaugeElement sample_gauge_element(const DegeneracyStructure& gamma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GaugeElement v;
  v.matrix = Eigen::MatrixXcd::Zero(gamma.dim, gamma.dim);
  v.blocks.reserve(gamma.clusters.size());
  for (const EigenCluster& c : gamma.clusters) {
    Eigen::MatrixXcd block = haar_unitary(c.count, rng);
    v.matrix.block(c.begin, c.begin, c.count, c.count) = block;
    v.blocks.push_back(std::move(block));
  }
  return v;
}

namespace {

void check_dims(const DensityMatrix& rho, const DegeneracyStructure& gamma) {
  if (rho.dim() != gamma.dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "state dim " + std::to_string(rho.dim()) + " vs structure dim " +
                    std::to_string(gamma.dim));
  }
}

}  // namespace

DensityMatrix twirl(const DensityMatrix& rho_energy, const DegeneracyStructure& gamma) {
  check_dims(rho_energy, gamma);
  const Eigen::Index d = rho_energy.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const EigenCluster& c : gamma.clusters) {
    if (c.count == 1) {
      out(c.begin, c.begin) = rho_energy.mat(c.begin, c.begin).real();
      continue;
    }
    double weight = 0.0;
    for (Eigen::Index i = c.begin; i < c.begin + c.count; ++i) {
      weight += rho_energy.mat(i, i).real();
    }
    const double fill = weight / static_cast<double>(c.count);
    for (Eigen::Index i = c.begin; i < c.begin + c.count; ++i) out(i, i) = fill;
  }
  return DensityMatrix{std::move(out)};
}

DensityMatrix dephase(const DensityMatrix& rho_energy) {
  Eigen::MatrixXcd out = rho_energy.mat.diagonal().asDiagonal();
  return DensityMatrix{std::move(out)};
}

Eigen::MatrixXcd coherence_part(const DensityMatrix& rho_energy) {
  Eigen::MatrixXcd out = rho_energy.mat;
  out.diagonal().setZero();
  return out;
}

namespace {

Eigen::MatrixXcd sample_blockwise(const DensityMatrix& rho, const DegeneracyStructure& gamma,
                                  std::mt19937_64& rng) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (const EigenCluster& c : gamma.clusters) {
    v.block(c.begin, c.begin, c.count, c.count) = haar_unitary(c.count, rng);
  }
  return v * rho.mat * v.adjoint();
}

}  // namespace

McTwirlResult mc_twirl(const DensityMatrix& rho_energy, const DegeneracyStructure& gamma,
                       int n_samples, std::uint64_t seed) {
  check_dims(rho_energy, gamma);
  if (n_samples < 1) throw Error(ErrorKind::InvalidParams, "n_samples must be >= 1");

  const Eigen::Index d = rho_energy.dim();
  const double n = static_cast<double>(n_samples);

  std::mt19937_64 rng(seed);
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(d, d);
  for (int s = 0; s < n_samples; ++s) mean += sample_blockwise(rho_energy, gamma, rng);
  mean /= n;

  // second pass for the element-wise variances (same seed, same draws)
  double var_sum = 0.0;
  if (n_samples > 1) {
    rng.seed(seed);
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(d, d);
    for (int s = 0; s < n_samples; ++s) {
      sq += (sample_blockwise(rho_energy, gamma, rng) - mean).cwiseAbs2();
    }
    // element-wise standard errors of the mean, aggregated as a Frobenius norm
    var_sum = sq.sum() / ((n - 1.0) * n);
  }
  return McTwirlResult{DensityMatrix{std::move(mean)}, std::sqrt(var_sum)};
}

bool is_invariant(const DensityMatrix& rho_energy, const DegeneracyStructure& gamma,
                  double tol) {
  const DensityMatrix dd = twirl(rho_energy, gamma);
  return (rho_energy.mat - dd.mat).norm() <= tol;
}

}  // namespace gtherm

#include "gtherm/models.hpp"

#include <cmath>
#include <string>

namespace gtherm {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::NonFiniteParameter, std::string(name) + " is not finite");
  }
}

void validate(const LZParams& p) {
  require_finite(p.a, "a");
  require_finite(p.delta, "delta");
  require_finite(p.eps, "eps");
  require_finite(p.g, "g");
  if (!(p.a > 0.0)) throw Error(ErrorKind::InvalidParams, "a must be > 0");
  if (p.eps < 0.0) throw Error(ErrorKind::InvalidParams, "eps must be >= 0");
}

void validate(const LMGParams& p) {
  require_finite(p.k, "k");
  require_finite(p.gamma, "gamma");
  require_finite(p.g, "g");
  require_finite(p.j, "j");
  if (!(p.k > 0.0)) throw Error(ErrorKind::InvalidParams, "k must be > 0");
  if (p.gamma < 0.0 || p.gamma > 1.0) {
    throw Error(ErrorKind::InvalidParams, "gamma must lie in [0, 1]");
  }
  if (p.g < 0.0) throw Error(ErrorKind::InvalidParams, "g must be >= 0");
}

Eigen::Index dimension_from_j(double j) {
  const double two_j = 2.0 * j;
  const double rounded = std::round(two_j);
  if (!std::isfinite(j) || rounded < 1.0 || std::abs(two_j - rounded) > 1e-9) {
    throw Error(ErrorKind::InvalidJ, "2j must be a positive integer, got j = " + std::to_string(j));
  }
  return static_cast<Eigen::Index>(rounded) + 1;
}

}  // namespace

HermitianOperator lz_hamiltonian(const LZParams& p) {
  validate(p);
  const double gz = -p.delta / 2.0 + p.a * p.g;
  Eigen::MatrixXcd h(2, 2);
  h << gz, p.eps, p.eps, -gz;
  return HermitianOperator{std::move(h)};
}

LZAnalytic lz_analytic(const LZParams& at_g0, double delta_g) {
  validate(at_g0);
  require_finite(delta_g, "delta_g");

  const double a = at_g0.a;
  const double eps = at_g0.eps;
  const double gamma0 = a * at_g0.g - at_g0.delta / 2.0;
  const double adg = a * delta_g;

  const double lam0_sq = gamma0 * gamma0 + eps * eps;       // pre-quench
  const double lam_sq = (adg + gamma0) * (adg + gamma0) + eps * eps;  // post-quench
  if (lam0_sq == 0.0 || lam_sq == 0.0) {
    throw Error(ErrorKind::SingularPoint,
                "closed forms are singular at gamma0 = " + std::to_string(gamma0) +
                    ", a*delta_g = " + std::to_string(adg) + ", eps = " + std::to_string(eps));
  }
  const double lam0 = std::sqrt(lam0_sq);
  const double lam = std::sqrt(lam_sq);

  LZAnalytic out;
  out.lambda = lam;
  out.phi = lam + adg + gamma0;
  out.e0 = -lam;
  out.e1 = lam;
  out.w_inv = -adg * (adg + gamma0) * (adg * gamma0 + lam0_sq) / (2.0 * lam0 * lam_sq);
  out.q_c = adg * adg * eps * eps / (2.0 * lam0 * lam_sq);

  const double lam0_32 = lam0_sq * lam0;
  out.dw_dg0 = -a * a * delta_g * eps * eps *
               (std::pow(adg, 4) + 3.0 * std::pow(adg, 3) * gamma0 +
                2.0 * adg * adg * gamma0 * gamma0 + adg * gamma0 * lam0_sq +
                lam0_sq * lam0_sq) /
               (2.0 * lam0_32 * lam_sq * lam_sq);
  // derivative of q_c; the extra power of a relative to dw_dg0's prefactor
  // comes from the chain rule through gamma0 = a g0 - delta/2
  out.dqc_dg0 = -a * adg * adg * eps * eps *
                (eps * eps * (2.0 * adg + 3.0 * gamma0) +
                 gamma0 * (adg + gamma0) * (adg + 3.0 * gamma0)) /
                (2.0 * lam0_32 * lam_sq * lam_sq);
  return out;
}

double lz_crossing_work(const LZParams& at_g0, double delta_g) {
  validate(at_g0);
  require_finite(delta_g, "delta_g");
  if (at_g0.eps != 0.0) {
    throw Error(ErrorKind::InvalidParams, "crossing work requires eps = 0");
  }
  const double gamma0 = at_g0.a * at_g0.g - at_g0.delta / 2.0;
  const double sgn = gamma0 > 0.0 ? 1.0 : (gamma0 < 0.0 ? -1.0 : 0.0);
  return -(at_g0.a * delta_g / 2.0) * sgn;
}

SpinOperators collective_spin_ops(double j) {
  const Eigen::Index d = dimension_from_j(j);
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double m = -j + static_cast<double>(i);
    jz(i, i) = m;
    if (i + 1 < d) jp(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  SpinOperators ops;
  ops.jx = HermitianOperator{(jp + jm) / 2.0};
  ops.jy = HermitianOperator{(jp - jm) / Complex(0.0, 2.0)};
  ops.jz = HermitianOperator{std::move(jz)};
  return ops;
}

HermitianOperator lmg_hamiltonian(const LMGParams& p) {
  validate(p);
  const SpinOperators ops = collective_spin_ops(p.j);
  Eigen::MatrixXcd h = -(p.k / (2.0 * p.j)) *
                           (ops.jz.mat * ops.jz.mat + p.gamma * ops.jy.mat * ops.jy.mat) -
                       p.g * ops.jx.mat;
  return HermitianOperator{(h + h.adjoint()) / 2.0};
}

GroundState ground_state(const HermitianOperator& h, double deg_tol,
                         const Eigen::VectorXcd* continuity_hint) {
  return ground_state(deg_tol > 0.0 ? decompose(h, deg_tol) : decompose(h), continuity_hint);
}

GroundState ground_state(const SpectralData& s, const Eigen::VectorXcd* continuity_hint) {
  const EigenCluster& ground = s.structure.clusters.front();

  Eigen::Index pick = ground.begin;
  if (ground.count > 1 && continuity_hint != nullptr) {
    if (continuity_hint->size() != s.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "continuity hint does not match dimension");
    }
    double best = -1.0;
    for (Eigen::Index i = ground.begin; i < ground.begin + ground.count; ++i) {
      const double overlap = std::abs(continuity_hint->dot(s.basis.col(i)));
      if (overlap > best) {
        best = overlap;
        pick = i;
      }
    }
  }

  GroundState out;
  out.vector = s.basis.col(pick);
  out.state = pure_state(out.vector);
  out.energy = s.eigenvalues(pick);
  out.degeneracy = ground.count;
  out.gap = s.structure.count() > 1
                ? s.structure.clusters[1].value - s.structure.clusters[0].value
                : 0.0;
  return out;
}

}  // namespace gtherm

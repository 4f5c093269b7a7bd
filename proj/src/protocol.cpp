#include "gtherm/protocol.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gtherm/models.hpp"

namespace gtherm {

ThermoReport run_quench(const QuenchSpec& spec, const DensityMatrix* rho0) {
  if (!std::isfinite(spec.delta_g)) {
    throw Error(ErrorKind::NonFiniteParameter, "delta_g is not finite");
  }
  if (rho0 != nullptr) {
    return quench_report(*rho0, spec.h0, spec.h1, spec.delta_g, spec.deg_tol, spec.qu);
  }
  const GroundState gs = ground_state(spec.h0, spec.deg_tol);
  return quench_report(gs.state, spec.h0, spec.h1, spec.delta_g, spec.deg_tol, spec.qu);
}

DensityMatrix evolve_step(const DensityMatrix& rho, const HermitianOperator& h, double dt) {
  if (!std::isfinite(dt)) throw Error(ErrorKind::NonFiniteParameter, "dt is not finite");
  if (rho.dim() != h.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "state does not match Hamiltonian dimension");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.mat);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "propagator eigendecomposition failed");
  }
  Eigen::VectorXcd phases(h.dim());
  for (Eigen::Index i = 0; i < h.dim(); ++i) {
    phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * dt));
  }
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix{u * rho.mat * u.adjoint()};
}

namespace {

// 3-point finite-difference weights (2nd order, one-sided at the ends).
struct Stencil {
  Eigen::Index idx[3];
  double w[3];
};

Stencil stencil_at(const std::vector<double>& t, Eigen::Index i) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Stencil s;
  if (n == 2) {
    const double h = t[1] - t[0];
    s.idx[0] = 0; s.idx[1] = 1; s.idx[2] = 1;
    s.w[0] = -1.0 / h; s.w[1] = 1.0 / h; s.w[2] = 0.0;
    return s;
  }
  Eigen::Index a, b, c;
  if (i == 0) { a = 0; b = 1; c = 2; }
  else if (i == n - 1) { a = n - 3; b = n - 2; c = n - 1; }
  else { a = i - 1; b = i; c = i + 1; }
  const double ta = t[a], tb = t[b], tc = t[c], x = t[i];
  s.idx[0] = a; s.idx[1] = b; s.idx[2] = c;
  s.w[0] = (2.0 * x - tb - tc) / ((ta - tb) * (ta - tc));
  s.w[1] = (2.0 * x - ta - tc) / ((tb - ta) * (tb - tc));
  s.w[2] = (2.0 * x - ta - tb) / ((tc - ta) * (tc - tb));
  return s;
}

template <typename T>
std::vector<T> differentiate_series(const std::vector<double>& t, const std::vector<T>& f) {
  std::vector<T> out(f.size());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(f.size()); ++i) {
    const Stencil s = stencil_at(t, i);
    out[i] = s.w[0] * f[s.idx[0]] + s.w[1] * f[s.idx[1]] + s.w[2] * f[s.idx[2]];
  }
  return out;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y,
                 const std::vector<Eigen::Index>& take) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < take.size(); ++i) {
    const Eigen::Index a = take[i], b = take[i + 1];
    acc += 0.5 * (t[b] - t[a]) * (y[a] + y[b]);
  }
  return acc;
}

}  // namespace

ProtocolResult run_protocol(const ProtocolGrid& grid, double deg_tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(grid.times.size());
  if (n < 2) throw Error(ErrorKind::InvalidParams, "need at least 2 time points");
  if (grid.hamiltonians.size() != grid.times.size()) {
    throw Error(ErrorKind::InvalidParams, "times and hamiltonians differ in length");
  }
  const Eigen::Index d = grid.initial_state.dim();
  for (const auto& h : grid.hamiltonians) {
    if (h.dim() != d) throw Error(ErrorKind::DimensionMismatch, "inconsistent dimensions");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(grid.times[i] > grid.times[i - 1])) {
      throw Error(ErrorKind::InvalidParams, "times must be strictly increasing");
    }
  }

  // eigendata with continuity: overlap-matched column order, positive-real
  // phase against the previous step
  std::vector<Eigen::MatrixXcd> u(n);
  std::vector<Eigen::VectorXd> h_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(grid.hamiltonians[i].mat);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::EigensolverFailure,
                  "eigendecomposition failed at t = " + std::to_string(grid.times[i]));
    }
    const Eigen::VectorXd w = es.eigenvalues();
    const double tol = deg_tol > 0.0 ? deg_tol : default_clustering_tol(w);
    for (Eigen::Index k = 1; k < d; ++k) {
      if (w(k) - w(k - 1) <= tol) {
        throw Error(ErrorKind::DegeneracyCrossing,
                    "degenerate spectrum at t = " + std::to_string(grid.times[i]) +
                        " (gap " + std::to_string(w(k) - w(k - 1)) + ")");
      }
    }
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::VectorXd wk = w;
    if (i > 0) {
      // greedy assignment on the overlap magnitudes; must stay near a permutation
      Eigen::MatrixXcd overlap = u[i - 1].adjoint() * v;
      Eigen::MatrixXd mags = overlap.cwiseAbs();
      std::vector<Eigen::Index> match(d, -1);
      for (Eigen::Index pass = 0; pass < d; ++pass) {
        Eigen::Index r = 0, c = 0;
        mags.maxCoeff(&r, &c);
        match[static_cast<std::size_t>(r)] = c;
        mags.row(r).setConstant(-1.0);
        mags.col(c).setConstant(-1.0);
      }
      Eigen::MatrixXcd vp(d, d);
      for (Eigen::Index r = 0; r < d; ++r) {
        const Eigen::Index c = match[static_cast<std::size_t>(r)];
        const Complex ov = overlap(r, c);
        if (std::abs(ov) < 0.5) {
          throw Error(ErrorKind::GridTooCoarse,
                      "eigenvector overlap " + std::to_string(std::abs(ov)) + " at t = " +
                          std::to_string(grid.times[i]) + "; refine the grid");
        }
        vp.col(r) = v.col(c) * (std::conj(ov) / std::abs(ov));
        wk(r) = w(c);
      }
      v = std::move(vp);
    }
    u[i] = std::move(v);
    h_diag[i] = std::move(wk);
  }

  // state samples: exponential propagation with interval-averaged Hamiltonians
  std::vector<Eigen::MatrixXcd> rho(n);
  rho[0] = grid.initial_state.mat;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const HermitianOperator h_avg{(grid.hamiltonians[i].mat + grid.hamiltonians[i + 1].mat) / 2.0};
    rho[i + 1] =
        evolve_step(DensityMatrix{rho[i]}, h_avg, grid.times[i + 1] - grid.times[i]).mat;
  }

  std::vector<Eigen::MatrixXcd> h_mats(n);
  for (Eigen::Index i = 0; i < n; ++i) h_mats[i] = grid.hamiltonians[i].mat;
  const std::vector<Eigen::VectorXd> h_dot = differentiate_series(grid.times, h_diag);
  const std::vector<Eigen::MatrixXcd> u_dot = differentiate_series(grid.times, u);
  const std::vector<Eigen::MatrixXcd> big_h_dot = differentiate_series(grid.times, h_mats);
  const std::vector<Eigen::MatrixXcd> rho_dot = differentiate_series(grid.times, rho);

  std::vector<double> y_winv(n), y_qc(n), y_wu(n), y_qu(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd pops = (u[i].adjoint() * rho[i] * u[i]).diagonal().real();
    y_winv[i] = pops.dot(h_dot[i]);
    const Eigen::MatrixXcd m = u_dot[i] * h_diag[i].asDiagonal() * u[i].adjoint();
    y_qc[i] = 2.0 * (rho[i] * m).trace().real();
    y_wu[i] = (rho[i] * big_h_dot[i]).trace().real();
    y_qu[i] = (rho_dot[i] * h_mats[i]).trace().real();
  }

  std::vector<Eigen::Index> all(n);
  for (Eigen::Index i = 0; i < n; ++i) all[i] = i;

  ProtocolResult res;
  res.w_inv = trapezoid(grid.times, y_winv, all);
  res.q_c = trapezoid(grid.times, y_qc, all);
  res.w_u = trapezoid(grid.times, y_wu, all);
  res.q_u = trapezoid(grid.times, y_qu, all);
  res.delta_u = (rho[n - 1] * h_mats[n - 1]).trace().real() -
                (rho[0] * h_mats[0]).trace().real();

  // error estimate: Richardson against the stride-2 subgrid (shared samples)
  if (n >= 5) {
    std::vector<Eigen::Index> half;
    for (Eigen::Index i = 0; i < n; i += 2) half.push_back(i);
    if (half.back() != n - 1) half.push_back(n - 1);
    res.quadrature_error = (std::abs(trapezoid(grid.times, y_winv, half) - res.w_inv) +
                            std::abs(trapezoid(grid.times, y_qc, half) - res.q_c) +
                            std::abs(trapezoid(grid.times, y_wu, half) - res.w_u) +
                            std::abs(trapezoid(grid.times, y_qu, half) - res.q_u)) /
                           3.0;
  } else {
    double rough = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double dt = grid.times[i + 1] - grid.times[i];
      rough += 0.5 * dt *
               (std::abs(y_winv[i + 1] - y_winv[i]) + std::abs(y_qc[i + 1] - y_qc[i]) +
                std::abs(y_wu[i + 1] - y_wu[i]) + std::abs(y_qu[i + 1] - y_qu[i]));
    }
    res.quadrature_error = rough;
  }
  return res;
}

}  // namespace gtherm

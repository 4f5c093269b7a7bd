#include "gtherm/thermo.hpp"

#include <cmath>
#include <string>

namespace gtherm {

namespace {

constexpr double kZeroPopulation = 1e-14;
constexpr double kNegativePopulationLimit = -1e-10;

// -p ln p with the clamping rules shared by every entropy here.
double ent_term(double p) {
  if (p < kNegativePopulationLimit) {
    throw Error(ErrorKind::NotDensityMatrix,
                "population " + std::to_string(p) + " below -1e-10");
  }
  if (p < kZeroPopulation) return 0.0;
  return -p * std::log(p);
}

Eigen::VectorXd twirled_populations(const Eigen::VectorXd& diag,
                                    const DegeneracyStructure& gamma) {
  Eigen::VectorXd out(diag.size());
  for (const EigenCluster& c : gamma.clusters) {
    if (c.count == 1) {
      out(c.begin) = diag(c.begin);
      continue;
    }
    const double fill = diag.segment(c.begin, c.count).sum() / static_cast<double>(c.count);
    out.segment(c.begin, c.count).setConstant(fill);
  }
  return out;
}

// The two routes to the asymmetry: full-entropy difference and the
// block-constant construction restricted to the degenerate clusters.
double holevo_from_populations(const Eigen::VectorXd& diag, const DegeneracyStructure& gamma) {
  const Eigen::VectorXd tw = twirled_populations(diag, gamma);
  const double s_gt = entropy_from_populations(tw);
  const double s_d = entropy_from_populations(diag);
  const double difference_form = s_gt - s_d;

  double block_form = 0.0;
  for (const EigenCluster& c : gamma.clusters) {
    if (c.count == 1) continue;
    for (Eigen::Index i = c.begin; i < c.begin + c.count; ++i) {
      block_form += ent_term(tw(i)) - ent_term(diag(i));
    }
  }
  if (std::abs(difference_form - block_form) > 1e-10) {
    throw Error(ErrorKind::InternalInconsistency,
                "asymmetry forms disagree: " + std::to_string(difference_form) + " vs " +
                    std::to_string(block_form));
  }
  return difference_form;
}

void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

double entropy_from_populations(const Eigen::VectorXd& populations) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < populations.size(); ++i) s += ent_term(populations(i));
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "entropy eigendecomposition failed");
  }
  return entropy_from_populations(es.eigenvalues());
}

double diagonal_entropy(const DensityMatrix& rho, const SpectralData& s) {
  const DensityMatrix rho_e = to_energy_basis(rho, s);
  return entropy_from_populations(rho_e.mat.diagonal().real());
}

double gauge_entropy(const DensityMatrix& rho, const SpectralData& s) {
  const DensityMatrix rho_e = to_energy_basis(rho, s);
  return entropy_from_populations(
      twirled_populations(rho_e.mat.diagonal().real(), s.structure));
}

double holevo_asymmetry(const DensityMatrix& rho, const SpectralData& s) {
  const DensityMatrix rho_e = to_energy_basis(rho, s);
  return holevo_from_populations(rho_e.mat.diagonal().real(), s.structure);
}

double coherence_measure(const DensityMatrix& rho, const SpectralData& s) {
  return diagonal_entropy(rho, s) - von_neumann_entropy(rho);
}

double tpm_average_work(const DensityMatrix& rho0, const SpectralData& pre,
                        const SpectralData& post) {
  check_same_dim(rho0.dim(), pre.dim(), "state vs pre-quench basis");
  check_same_dim(pre.dim(), post.dim(), "pre vs post basis");
  const Eigen::VectorXd p = (pre.basis.adjoint() * rho0.mat * pre.basis).diagonal().real();
  // transition probabilities |<m_f|n_i>|^2
  const Eigen::MatrixXd t = (post.basis.adjoint() * pre.basis).cwiseAbs2();
  return post.eigenvalues.dot(t * p) - pre.eigenvalues.dot(p);
}

ThermoReport quench_report(const DensityMatrix& rho0, const HermitianOperator& h0,
                           const HermitianOperator& h1, double delta_g, double deg_tol,
                           QuConvention qu, const SpectralData* pre_computed) {
  check_same_dim(rho0.dim(), h0.dim(), "state vs H0");
  check_same_dim(h0.dim(), h1.dim(), "H0 vs H1");
  if (!std::isfinite(delta_g)) {
    throw Error(ErrorKind::NonFiniteParameter, "delta_g is not finite");
  }

  const HermitianOperator h_g{h0.mat + delta_g * h1.mat};
  const SpectralData post = deg_tol > 0.0 ? decompose(h_g, deg_tol) : decompose(h_g);
  const SpectralData pre_local = pre_computed != nullptr
                                     ? SpectralData{}
                                     : (deg_tol > 0.0 ? decompose(h0, deg_tol) : decompose(h0));
  const SpectralData& pre = pre_computed != nullptr ? *pre_computed : pre_local;

  const DensityMatrix rho_e = to_energy_basis(rho0, post);
  const Eigen::MatrixXcd h1_e = operator_to_energy_basis(h1.mat, post);
  const DensityMatrix rho_dd = twirl(rho_e, post.structure);

  ThermoReport r;
  r.w_inv = 0.5 * delta_g * (rho_dd.mat * h1_e).trace().real();
  r.q_c = 0.5 * delta_g * ((rho_e.mat - rho_dd.mat) * h1_e).trace().real();
  const double tr_rho_h1 = (rho0.mat * h1.mat).trace().real();
  r.w_u = 0.5 * delta_g * tr_rho_h1;
  r.delta_u = delta_g * tr_rho_h1;
  r.q_u = (qu == QuConvention::FirstLaw) ? r.delta_u - r.w_u : 0.0;
  r.q_inv = r.q_u + r.q_c;
  r.tpm_avg_work = tpm_average_work(rho0, pre, post);

  const Eigen::VectorXd diag = rho_e.mat.diagonal().real();
  r.s_u = von_neumann_entropy(rho0);
  r.s_d = entropy_from_populations(diag);
  r.s_gt = entropy_from_populations(twirled_populations(diag, post.structure));
  r.s_gamma = holevo_from_populations(diag, post.structure);
  r.coherence = r.s_d - r.s_u;

  r.ground_energy = pre.eigenvalues(0);
  r.ground_degeneracy = pre.structure.clusters.front().count;
  r.ground_gap = pre.structure.count() > 1
                     ? pre.structure.clusters[1].value - pre.structure.clusters[0].value
                     : 0.0;
  return r;
}

}  // namespace gtherm

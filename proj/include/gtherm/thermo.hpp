#pragma once

#include <Eigen/Dense>

#include "gtherm/gauge.hpp"
#include "gtherm/spectral.hpp"

namespace gtherm {

// How the uninvariant heat is assigned for a sudden quench.  FirstLaw keeps
// dU = W_u + Q_u exact by construction; Zero pins Q_u to zero for closed
// systems.
enum class QuConvention { FirstLaw, Zero };

// -x ln x with 0 ln 0 := 0; entries below 1e-14 are treated as zero, entries
// below -1e-10 are rejected.
double entropy_from_populations(const Eigen::VectorXd& populations);

double von_neumann_entropy(const DensityMatrix& rho);
double diagonal_entropy(const DensityMatrix& rho, const SpectralData& s);
double gauge_entropy(const DensityMatrix& rho, const SpectralData& s);

// S_GT - S_d, cross-checked against the block-constant construction on the
// degenerate clusters; the two routes must agree to 1e-10.
double holevo_asymmetry(const DensityMatrix& rho, const SpectralData& s);

// Relative entropy of coherence S_d - S_u.
double coherence_measure(const DensityMatrix& rho, const SpectralData& s);

struct ThermoReport {
  double w_inv{0.0};
  double q_c{0.0};
  double q_inv{0.0};
  double w_u{0.0};
  double q_u{0.0};
  double tpm_avg_work{0.0};
  double delta_u{0.0};
  double s_u{0.0};
  double s_d{0.0};
  double s_gt{0.0};
  double s_gamma{0.0};
  double coherence{0.0};
  double ground_energy{0.0};      // of the pre-quench Hamiltonian
  double ground_gap{0.0};         // separation to the next cluster, 0 if none
  Eigen::Index ground_degeneracy{1};
};

// Mean of the two-projective-measurement work distribution for the quench
// pre -> post with initial populations taken from rho0 in the pre basis.
double tpm_average_work(const DensityMatrix& rho0, const SpectralData& pre,
                        const SpectralData& post);

// Everything for a sudden quench H0 -> H0 + delta_g * H1.  The twirl and all
// entropies use the post-quench degeneracy structure; ground-level fields
// describe the pre-quench Hamiltonian.  deg_tol <= 0 selects the default
// clustering tolerance.  A caller that already decomposed h0 may pass that
// spectral data to skip the repeated eigensolve.
ThermoReport quench_report(const DensityMatrix& rho0, const HermitianOperator& h0,
                           const HermitianOperator& h1, double delta_g, double deg_tol,
                           QuConvention qu = QuConvention::FirstLaw,
                           const SpectralData* pre_computed = nullptr);

}  // namespace gtherm

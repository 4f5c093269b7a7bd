#pragma once

#include <Eigen/Dense>
#include <optional>

#include "gtherm/hermitian.hpp"
#include "gtherm/spectral.hpp"

namespace gtherm {

// ------------------------------ Landau-Zener ------------------------------

struct LZParams {
  double a{1.0};      // field coupling, > 0
  double delta{0.0};  // bare qubit frequency
  double eps{0.0};    // gap parameter, >= 0
  double g{0.0};      // field strength
};

// (-delta/2 + a g) sigma_z + eps sigma_x
HermitianOperator lz_hamiltonian(const LZParams& p);

// Closed-form quench quantities evaluated at gamma0 = a g0 - delta/2.
struct LZAnalytic {
  double w_inv{0.0};
  double q_c{0.0};
  double dw_dg0{0.0};
  double dqc_dg0{0.0};
  double e0{0.0};     // post-quench eigenvalues -lambda, +lambda
  double e1{0.0};
  double lambda{0.0};
  double phi{0.0};
};

LZAnalytic lz_analytic(const LZParams& at_g0, double delta_g);

// Quench work through the eps = 0 level crossing: -(a delta_g / 2) sgn(gamma0)
// with sgn(0) := 0, matching the fully degenerate twirl at the crossing.
double lz_crossing_work(const LZParams& at_g0, double delta_g);

// --------------------------- Collective spins -----------------------------

struct SpinOperators {
  HermitianOperator jx, jy, jz;
};

// Angular-momentum matrices in the Jz eigenbasis, m ascending from -j to j.
SpinOperators collective_spin_ops(double j);

// --------------------------- Lipkin-Meshkov-Glick -------------------------

struct LMGParams {
  double k{1.0};      // spin coupling, > 0
  double gamma{0.0};  // anisotropy in [0, 1]
  double g{0.0};      // field along x, >= 0
  double j{0.5};      // total angular momentum, 2j a positive integer
};

// -(k/2j)(Jz^2 + gamma Jy^2) - g Jx, dimension 2j+1
HermitianOperator lmg_hamiltonian(const LMGParams& p);

// --------------------------- Ground state ---------------------------------

struct GroundState {
  DensityMatrix state;
  Eigen::VectorXcd vector;
  double energy{0.0};
  double gap{0.0};               // to the next cluster, 0 if none
  Eigen::Index degeneracy{1};    // size of the ground cluster
};

// Lowest eigenvector under the deterministic phase convention.  When the
// ground level is degenerate and a hint is given, the cluster member with
// maximal overlap against the hint is selected (scan continuity).
GroundState ground_state(const HermitianOperator& h, double deg_tol,
                         const Eigen::VectorXcd* continuity_hint = nullptr);
GroundState ground_state(const SpectralData& s,
                         const Eigen::VectorXcd* continuity_hint = nullptr);

}  // namespace gtherm

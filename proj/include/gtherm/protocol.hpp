#pragma once

#include <vector>

#include "gtherm/thermo.hpp"

namespace gtherm {

// Sudden quench H0 -> H0 + delta_g * H1 (g0 dependence already folded into
// h0).  The jump time is purely notational: the state does not move.
struct QuenchSpec {
  HermitianOperator h0;
  HermitianOperator h1;
  double g0{0.0};
  double delta_g{0.0};
  double deg_tol{0.0};  // <= 0 selects the default clustering tolerance
  QuConvention qu{QuConvention::FirstLaw};
};

// rho0 == nullptr prepares the ground state of h0.
ThermoReport run_quench(const QuenchSpec& spec, const DensityMatrix* rho0 = nullptr);

// e^{-iH dt} rho e^{+iH dt} via spectral decomposition.
DensityMatrix evolve_step(const DensityMatrix& rho, const HermitianOperator& h, double dt);

struct ProtocolGrid {
  std::vector<double> times;                  // strictly increasing, >= 2 entries
  std::vector<HermitianOperator> hamiltonians;
  DensityMatrix initial_state;
};

struct ProtocolResult {
  double w_inv{0.0};
  double q_c{0.0};
  double w_u{0.0};
  double q_u{0.0};
  double delta_u{0.0};
  double quadrature_error{0.0};  // estimate for the accumulated integrals
};

// Discretized evaluator for continuously driven Hamiltonians: trapezoidal in
// time, central (one-sided at the ends) difference stencils, eigenvector
// continuity by maximal-overlap assignment with positive-real phase fixing.
// Requires a non-degenerate spectrum at every grid time.
ProtocolResult run_protocol(const ProtocolGrid& grid, double deg_tol);

}  // namespace gtherm

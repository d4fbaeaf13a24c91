#pragma once

// Entanglement and heat figures of merit.
//
// The X-form formulas use |alpha| only: local phase rotations move the phase of
// alpha without changing any of these quantities.

#include "qtm/model.hpp"

namespace qtm {

struct MetricsRecord {
  double concurrence = 0.0;
  double chsh = 0.0;
  double fidelity = 0.0;
  double singlet_fraction = 0.0;
  /// Heat currents, positive when flowing into the bath.
  double q_dot_c = 0.0;
  double q_dot_h = 0.0;
  /// False when the state used for the heat currents is not stationary, in which
  /// case q_dot_h = -q_dot_c does not hold physically.
  bool heat_balanced = true;
};

/// max{2(|alpha| - sqrt(p00 p11)), 0}.
double concurrence_x(const XState& state);

/// General two-qubit concurrence from the spin-flipped spectrum. Throws
/// InvalidArgument when rho is not a density matrix within tolerance.
double concurrence_wootters(const Matrix4& rho);

/// Closed-form concurrence of the ideal feedback steady state.
double concurrence_ideal_closed_form(const RateSet& rates, double g);

/// Maximal CHSH value for an X-state.
double chsh_x(const XState& state);

/// Maximal CHSH value of any two-qubit state: 2 sqrt(m1 + m2) with m1, m2 the
/// two largest eigenvalues of T^T T, T the spin correlation matrix.
double chsh_horodecki(const Matrix4& rho);

double singlet_fraction_x(const XState& state);

/// (1 + 2 F) / 3 with F the singlet fraction.
double teleportation_fidelity(const XState& state);

struct HeatCurrents {
  double q_dot_c = 0.0;
  double q_dot_h = 0.0;
  bool balanced = true;
};

/// Cold-bath heat current from the jump-resolved energy balance; the hot current
/// follows from the stationary balance q_dot_h = -q_dot_c. `balanced` reports
/// whether `state` is stationary under the generator selected by params.
///
/// With u = inf the doubly excited state is energetically unreachable and the
/// (epsilon + U) terms are dropped.
HeatCurrents heat_current_general(const XState& state, const RateSet& rates, const SystemParams& params);

/// Concurrence, CHSH, singlet fraction and fidelity of a state.
MetricsRecord entanglement_metrics(const XState& state);

/// entanglement_metrics plus heat_current_general.
MetricsRecord compute_metrics(const XState& state, const SystemParams& params);

/// Trace distance 0.5 ||a - b||_1.
double trace_distance(const XState& a, const XState& b);

}  // namespace qtm

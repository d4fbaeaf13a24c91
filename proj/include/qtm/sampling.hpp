#pragma once

// Random draws of parameters and states for property checks and validation.

#include <random>

#include "qtm/model.hpp"

namespace qtm {

enum class Regime {
  Free,       ///< feedback off, arbitrary temperatures and interaction
  General,    ///< general feedback with eta in (0, 0.4)
  Ideal,      ///< t_c = 0, lam = inf, ideal feedback
  UInfinite,  ///< u = inf feedback with eta in (0, 0.4)
};

/// Draws a valid parameter set. Energies and rates are log-uniform over a few
/// decades around epsilon = 1; eta-carrying regimes draw lam / gamma_det in
/// [0.01, 10], which keeps eta inside (0, 0.4).
SystemParams sample_params(std::mt19937_64& rng, Regime regime);

/// Uniform populations on the simplex and a coherence of random phase with
/// |alpha| uniform in [0, sqrt(p01 p10)].
XState sample_xstate(std::mt19937_64& rng);

}  // namespace qtm

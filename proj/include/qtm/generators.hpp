#pragma once

// Liouvillians of the machine as 6x6 complex matrices acting on the vectorized
// X-state (p00, p01, p10, p11, alpha, conj(alpha)).

#include "qtm/model.hpp"

namespace qtm {

enum class GeneratorKind { Free, HotDecoupled, FeedbackGeneral, FeedbackIdeal, FeedbackUInfinite };

struct Generator {
  Matrix6 matrix = Matrix6::Zero();
  GeneratorKind kind = GeneratorKind::Free;
  SystemParams params;
};

/// Probability that the sign of the detector signal misreports the parity
/// sector, 0.5 * erfc(2 sqrt(lam / gamma_det)). Exactly 0 for lam = inf.
struct FeedbackError {
  double eta = 0.0;
};

FeedbackError feedback_error(ExtendedReal lam, double gamma_det);

/// Coherent flip-flop term plus all eight local dissipators.
Generator build_free(const SystemParams& params);

/// Coherent term plus the cold dissipators only (hot bath switched off).
Generator build_hot_decoupled(const SystemParams& params);

/// Fast-detector feedback generator with error probability eta.
///
/// Columns of the even-parity populations (p00, p11) evolve with the
/// hot-coupled generator weighted by 1 - eta and the decoupled one weighted by
/// eta; odd-parity columns (p01, p10, alpha, conj(alpha)) take the weights the
/// other way round. Since both generators share the cold and coherent parts,
/// this is the decoupled generator plus the hot dissipators scaled per column.
Generator build_feedback_general(const SystemParams& params);

/// Error-free feedback with a zero-temperature cold bath. Requires t_c = 0 and
/// lam = inf.
Generator build_feedback_ideal(const SystemParams& params);

/// Feedback generator for infinite interaction, where doubly excited states can
/// no longer be populated thermally. Requires u = inf.
Generator build_feedback_u_infinite(const SystemParams& params);

/// Generator selected by params.feedback: Off -> free, General -> general,
/// Ideal -> ideal, UInfinite -> u_infinite.
Generator build_generator(const SystemParams& params);

std::string to_string(GeneratorKind kind);

}  // namespace qtm

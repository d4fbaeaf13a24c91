#include "qtm/generators.hpp"

#include <cmath>

namespace qtm {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_odd_parity(int component) { return component == kP01 || component == kP10; }

// Hamiltonian part -i[H, rho] restricted to the X-manifold. Only the flip-flop
// coupling survives: |01> and |10> are degenerate, so diagonal energies cancel
// in the alpha equation.
void add_coherent(Matrix6& m, double g) {
  m(kP01, kAlpha) += kI * g;
  m(kP01, kAlphaConj) -= kI * g;
  m(kP10, kAlpha) -= kI * g;
  m(kP10, kAlphaConj) += kI * g;
  m(kAlpha, kP01) += kI * g;
  m(kAlpha, kP10) -= kI * g;
  m(kAlphaConj, kP01) -= kI * g;
  m(kAlphaConj, kP10) += kI * g;
}

// Dissipator of a single jump |to><from| at the given rate. A jump leaving |01>
// or |10> also damps the coherence at half the rate.
void add_jump(Matrix6& m, int from, int to, double rate) {
  m(from, from) -= rate;
  m(to, from) += rate;
  if (is_odd_parity(from)) {
    m(kAlpha, kAlpha) -= 0.5 * rate;
    m(kAlphaConj, kAlphaConj) -= 0.5 * rate;
  }
}

Matrix6 cold_part(const RateSet& r) {
  Matrix6 m = Matrix6::Zero();
  add_jump(m, kP00, kP10, r.up(Bath::Cold, 0));
  add_jump(m, kP10, kP00, r.down(Bath::Cold, 0));
  add_jump(m, kP01, kP11, r.up(Bath::Cold, 1));
  add_jump(m, kP11, kP01, r.down(Bath::Cold, 1));
  return m;
}

Matrix6 hot_part(const RateSet& r) {
  Matrix6 m = Matrix6::Zero();
  add_jump(m, kP00, kP01, r.up(Bath::Hot, 0));
  add_jump(m, kP01, kP00, r.down(Bath::Hot, 0));
  add_jump(m, kP10, kP11, r.up(Bath::Hot, 1));
  add_jump(m, kP11, kP10, r.down(Bath::Hot, 1));
  return m;
}

Matrix6 decoupled_matrix(const SystemParams& params, const RateSet& r) {
  Matrix6 m = cold_part(r);
  add_coherent(m, params.g);
  return m;
}

Generator make(Matrix6 m, GeneratorKind kind, const SystemParams& params) {
  return Generator{std::move(m), kind, params};
}

}  // namespace

FeedbackError feedback_error(ExtendedReal lam, double gamma_det) {
  if (!(std::isfinite(gamma_det) && gamma_det > 0.0)) {
    throw InvalidArgument("gamma_det must be finite and > 0");
  }
  if (lam.is_infinite()) return {0.0};
  const double l = lam.value();
  if (!(std::isfinite(l) && l > 0.0)) throw InvalidArgument("lam must be > 0");
  return {0.5 * std::erfc(2.0 * std::sqrt(l / gamma_det))};
}

Generator build_free(const SystemParams& params) {
  const RateSet r = make_rates(params);
  return make(decoupled_matrix(params, r) + hot_part(r), GeneratorKind::Free, params);
}

Generator build_hot_decoupled(const SystemParams& params) {
  const RateSet r = make_rates(params);
  return make(decoupled_matrix(params, r), GeneratorKind::HotDecoupled, params);
}

Generator build_feedback_general(const SystemParams& params) {
  const RateSet r = make_rates(params);
  const double eta = feedback_error(params.lam, params.gamma_det).eta;
  Matrix6 hot = hot_part(r);
  for (int col = 0; col < 6; ++col) {
    const bool even = col == kP00 || col == kP11;
    hot.col(col) *= even ? 1.0 - eta : eta;
  }
  return make(decoupled_matrix(params, r) + hot, GeneratorKind::FeedbackGeneral, params);
}

Generator build_feedback_ideal(const SystemParams& params) {
  params.validate();
  if (params.t_c != 0.0) throw InvalidArgument("ideal feedback generator requires t_c = 0");
  if (!params.lam.is_infinite()) throw InvalidArgument("ideal feedback generator requires lam = inf");
  const RateSet r = make_rates(params);
  const double c0 = r.down(Bath::Cold, 0);
  const double c1 = r.down(Bath::Cold, 1);
  const double h0 = r.up(Bath::Hot, 0);
  const double h1 = r.down(Bath::Hot, 1);
  const Complex ig = kI * params.g;

  Matrix6 m;
  // clang-format off
  m << -h0, 0.0,  c0,        0.0,   0.0,       0.0,
        h0, 0.0,  0.0,       c1,    ig,       -ig,
        0.0, 0.0, -c0,       h1,   -ig,        ig,
        0.0, 0.0,  0.0, -c1 - h1,   0.0,       0.0,
        0.0,  ig, -ig,       0.0, -0.5 * c0,   0.0,
        0.0, -ig,  ig,       0.0,   0.0,      -0.5 * c0;
  // clang-format on
  return make(m, GeneratorKind::FeedbackIdeal, params);
}

Generator build_feedback_u_infinite(const SystemParams& params) {
  params.validate();
  if (!params.u.is_infinite()) throw InvalidArgument("u_inf feedback generator requires u = inf");
  const RateSet r = make_rates(params);
  const double eta = feedback_error(params.lam, params.gamma_det).eta;
  const double cu0 = r.up(Bath::Cold, 0);
  const double cd0 = r.down(Bath::Cold, 0);
  const double cd1 = r.down(Bath::Cold, 1);
  const double hu0 = r.up(Bath::Hot, 0);
  const double hd0 = r.down(Bath::Hot, 0);
  const double hd1 = r.down(Bath::Hot, 1);
  const Complex ig = kI * params.g;
  const double decay = -0.5 * (eta * hd0 + cd0);

  Matrix6 m;
  // clang-format off
  m << -cu0 - hu0 * (1 - eta), eta * hd0,  cd0,  0.0,                          0.0,   0.0,
        hu0 * (1 - eta),      -eta * hd0,  0.0,  cd1,                          ig,   -ig,
        cu0,                   0.0,       -cd0,  hd1 * (1 - eta),             -ig,    ig,
        0.0,                   0.0,        0.0, -cd1 - hd1 * (1 - eta),        0.0,   0.0,
        0.0,                   ig,        -ig,   0.0,                          decay, 0.0,
        0.0,                  -ig,         ig,   0.0,                          0.0,   decay;
  // clang-format on
  return make(m, GeneratorKind::FeedbackUInfinite, params);
}

Generator build_generator(const SystemParams& params) {
  switch (params.feedback) {
    case FeedbackMode::Off:
      return build_free(params);
    case FeedbackMode::General:
      return build_feedback_general(params);
    case FeedbackMode::Ideal:
      return build_feedback_ideal(params);
    case FeedbackMode::UInfinite:
      return build_feedback_u_infinite(params);
  }
  throw InvalidArgument("unknown feedback mode");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Free:
      return "free";
    case GeneratorKind::HotDecoupled:
      return "hot_decoupled";
    case GeneratorKind::FeedbackGeneral:
      return "feedback_general";
    case GeneratorKind::FeedbackIdeal:
      return "feedback_ideal";
    case GeneratorKind::FeedbackUInfinite:
      return "feedback_u_infinite";
  }
  return "unknown";
}

}  // namespace qtm

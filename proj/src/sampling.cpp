#include "qtm/sampling.hpp"

#include <cmath>
#include <numbers>

namespace qtm {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

SystemParams sample_params(std::mt19937_64& rng, Regime regime) {
  SystemParams p;
  p.epsilon = 1.0;
  p.g = log_uniform(rng, 1e-3, 1.0);
  p.gamma_c = log_uniform(rng, 1e-3, 1.0);
  p.gamma_h = log_uniform(rng, 1e-3, 1.0);
  p.t_h = log_uniform(rng, 0.05, 20.0);
  p.t_c = p.t_h * uniform(rng, 0.0, 1.0);
  p.statistics = uniform(rng, 0.0, 1.0) < 0.5 ? BathStatistics::Fermionic : BathStatistics::Bosonic;
  const double pick = uniform(rng, 0.0, 1.0);
  p.u = pick < 0.2 ? ExtendedReal(0.0) : pick < 0.4 ? ExtendedReal::infinite() : ExtendedReal(log_uniform(rng, 1e-2, 1e2));
  p.gamma_det = 1.0;
  p.lam = log_uniform(rng, 1e-2, 10.0);

  switch (regime) {
    case Regime::Free:
      p.feedback = FeedbackMode::Off;
      break;
    case Regime::General:
      p.feedback = FeedbackMode::General;
      break;
    case Regime::Ideal:
      p.feedback = FeedbackMode::Ideal;
      p.t_c = 0.0;
      p.lam = ExtendedReal::infinite();
      break;
    case Regime::UInfinite:
      p.feedback = FeedbackMode::UInfinite;
      p.u = ExtendedReal::infinite();
      break;
  }
  return p;
}

XState sample_xstate(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  double w[4];
  double sum = 0.0;
  for (double& x : w) sum += (x = e(rng));
  XState s;
  s.p00 = w[0] / sum;
  s.p01 = w[1] / sum;
  s.p10 = w[2] / sum;
  s.p11 = w[3] / sum;
  const double r = uniform(rng, 0.0, 1.0) * std::sqrt(s.p01 * s.p10);
  s.alpha = std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  return s;
}

}  // namespace qtm

#include "qtm/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qtm {

DegenerateKernel::DegenerateKernel(double smallest, double next_smallest, double largest)
    : Error([&] {
        std::ostringstream os;
        os << "generator kernel is degenerate: two smallest singular values " << smallest << " and "
           << next_smallest << " (largest " << largest << ")";
        return os.str();
      }()),
      smallest_(smallest),
      next_smallest_(next_smallest),
      largest_(largest) {}

double ExtendedReal::value() const {
  if (infinite_) throw InvalidArgument("value requested from an infinite quantity");
  return value_;
}

std::string to_string(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << x.value();
  return os.str();
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be finite and > 0");
  require(finite_nonneg(g), "g must be finite and >= 0");
  require(u.is_infinite() || finite_nonneg(u.as_double()), "u must be >= 0 or inf");
  require(finite_nonneg(gamma_c), "gamma_c must be finite and >= 0");
  require(finite_nonneg(gamma_h), "gamma_h must be finite and >= 0");
  require(finite_nonneg(t_c), "t_c must be finite and >= 0");
  require(finite_nonneg(t_h), "t_h must be finite and >= 0");
  require(t_c <= t_h, "t_c must not exceed t_h");
  require(std::isfinite(gamma_det) && gamma_det > 0.0, "gamma_det must be finite and > 0");
  require(lam.is_infinite() || (std::isfinite(lam.as_double()) && lam.as_double() > 0.0),
          "lam must be > 0 or inf");
  if (feedback == FeedbackMode::Ideal) {
    require(t_c == 0.0, "ideal feedback requires t_c = 0");
    require(lam.is_infinite(), "ideal feedback requires lam = inf");
  }
  if (feedback == FeedbackMode::UInfinite) {
    require(u.is_infinite(), "u_inf feedback requires u = inf");
  }
}

double RateSet::max_rate() const {
  double m = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) m = std::max({m, excitation[k][l], relaxation[k][l]});
  }
  return m;
}

namespace {

struct RatePair {
  double up;
  double down;
};

// Rates for a transition costing energy `gap` (possibly infinite) against a bath
// at temperature t with bare rate gamma.
RatePair thermal_pair(double gamma, double gap, double t, BathStatistics stats) {
  if (t == 0.0 || std::isinf(gap)) return {0.0, gamma};
  const double x = gap / t;
  if (stats == BathStatistics::Fermionic) {
    return {gamma / (std::exp(x) + 1.0), gamma / (1.0 + std::exp(-x))};
  }
  // x > 0 always (epsilon > 0, U >= 0), so both expm1 terms are nonzero.
  return {gamma / std::expm1(x), gamma / -std::expm1(-x)};
}

}  // namespace

RateSet make_rates(const SystemParams& params) {
  params.validate();
  RateSet rates;
  const double gaps[2] = {params.epsilon, params.u.is_infinite()
                                              ? std::numeric_limits<double>::infinity()
                                              : params.epsilon + params.u.value()};
  const double gammas[2] = {params.gamma_c, params.gamma_h};
  const double temps[2] = {params.t_c, params.t_h};
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      const RatePair p = thermal_pair(gammas[k], gaps[l], temps[k], params.statistics);
      rates.excitation[k][l] = p.up;
      rates.relaxation[k][l] = p.down;
    }
  }
  return rates;
}

void XState::check(double tol) const {
  const double tr = trace();
  if (!std::isfinite(tr) || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidArgument("X-state has non-finite entries");
  }
  if (std::abs(tr - 1.0) > tol) throw InvalidArgument("X-state trace differs from 1");
  if (std::min({p00, p01, p10, p11}) < -tol) throw InvalidArgument("X-state has a negative population");
  const double bound = std::sqrt(std::max(p01, 0.0) * std::max(p10, 0.0));
  if (std::abs(alpha) > bound + tol) throw InvalidArgument("X-state coherence exceeds sqrt(p01 p10)");
}

Vector6 vectorize(const XState& s) {
  Vector6 v;
  v << s.p00, s.p01, s.p10, s.p11, s.alpha, std::conj(s.alpha);
  return v;
}

XState devectorize(const Vector6& v, double tol) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v(i).imag()) > tol) throw InvalidArgument("vectorized population is not real");
  }
  if (std::abs(v(kAlphaConj) - std::conj(v(kAlpha))) > tol) {
    throw InvalidArgument("sixth component is not the conjugate of the fifth");
  }
  XState s;
  s.p00 = v(kP00).real();
  s.p01 = v(kP01).real();
  s.p10 = v(kP10).real();
  s.p11 = v(kP11).real();
  s.alpha = 0.5 * (v(kAlpha) + std::conj(v(kAlphaConj)));
  return s;
}

Matrix4 to_dense(const XState& s) {
  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = s.p00;
  rho(1, 1) = s.p01;
  rho(2, 2) = s.p10;
  rho(3, 3) = s.p11;
  rho(1, 2) = s.alpha;
  rho(2, 1) = std::conj(s.alpha);
  return rho;
}

}  // namespace qtm

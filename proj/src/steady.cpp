#include "qtm/steady.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace qtm {

NotConverged::NotConverged(double t_max, const XState& last)
    : Error([&] {
        std::ostringstream os;
        os << "time evolution did not reach the stationary state by t = " << t_max;
        return os.str();
      }()),
      t_max_(t_max),
      last_(last) {}

std::array<double, 6> singular_values(const Matrix6& m) {
  Eigen::JacobiSVD<Matrix6> svd(m);
  std::array<double, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = svd.singularValues()(i);
  return out;
}

XState steady_state(const Matrix6& m) {
  if (!m.allFinite()) throw InvalidArgument("generator has non-finite entries");
  const auto sv = singular_values(m);
  const double largest = sv[0];
  if (largest == 0.0 || sv[4] - sv[5] <= kDegeneracyTol * largest) {
    throw DegenerateKernel(sv[5], sv[4], largest);
  }

  // Population rows sum to zero, so the first one is redundant and can carry
  // the normalization instead.
  Matrix6 bordered = m;
  bordered.row(kP00) << 1.0, 1.0, 1.0, 1.0, 0.0, 0.0;
  Vector6 rhs = Vector6::Zero();
  rhs(kP00) = 1.0;
  const Vector6 v = bordered.partialPivLu().solve(rhs);
  if (!v.allFinite()) throw NoConvergence("kernel solve produced non-finite values");

  const double residual = (m * v).norm();
  if (residual > 1e-10 * largest * std::max(1.0, v.norm())) {
    std::ostringstream os;
    os << "stationary residual " << residual << " exceeds tolerance";
    throw NoConvergence(os.str());
  }

  XState s;
  s.p00 = v(kP00).real();
  s.p01 = v(kP01).real();
  s.p10 = v(kP10).real();
  s.p11 = v(kP11).real();
  s.alpha = 0.5 * (v(kAlpha) + std::conj(v(kAlphaConj)));
  try {
    s.check();
  } catch (const InvalidArgument& e) {
    throw NoConvergence(std::string("stationary vector is not a valid state: ") + e.what());
  }
  return s;
}

XState steady_state(const Generator& gen) { return steady_state(gen.matrix); }

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kRelTol = 1e-10;
constexpr double kAbsTol = 1e-14;
constexpr long kMaxSteps = 20'000'000;

}  // namespace

XState evolve_to_steady(const Generator& gen, const XState& init, double t_max, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (!(t_max >= 0.0)) throw InvalidArgument("t_max must be >= 0");
  init.check();
  const Matrix6& m = gen.matrix;

  Vector6 y = vectorize(init);
  Vector6 k1 = m * y;
  if (k1.cwiseAbs().maxCoeff() <= tol) return init;

  const double scale = std::max(m.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  double t = 0.0;
  // Steps beyond the explicit stability region are not caught by the error
  // estimate once the solution is nearly stationary.
  const double h_max = 2.5 / scale;
  double h = std::min(t_max, 0.01 / scale);
  for (long step = 0; step < kMaxSteps && t < t_max; ++step) {
    h = std::min(h, t_max - t);
    const Vector6 k2 = m * (y + h * a21 * k1);
    const Vector6 k3 = m * (y + h * (a31 * k1 + a32 * k2));
    const Vector6 k4 = m * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector6 k5 = m * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector6 k6 = m * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vector6 y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector6 k7 = m * y_new;
    const Vector6 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double sc = kAbsTol + kRelTol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      err_norm = std::max(err_norm, std::abs(err(i)) / sc);
    }
    if (err_norm <= 1.0) {
      t += h;
      y = y_new;
      k1 = k7;
      if (k1.cwiseAbs().maxCoeff() <= tol) return devectorize(y);
    }
    const double factor = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
    h = std::min(h * std::clamp(factor, 0.2, 5.0), h_max);
  }
  throw NotConverged(t_max, devectorize(y));
}

XState stationary_ideal(const RateSet& rates, double g) {
  const double c = rates.down(Bath::Cold, 0);
  const double h = rates.up(Bath::Hot, 0);
  const double g2 = 4.0 * g * g;
  const double norm = c * c * h + g2 * (c + 2.0 * h);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("ideal stationary state undefined: normalization vanishes");
  }
  XState s;
  s.p00 = g2 * c / norm;
  s.p01 = (g2 + c * c) * h / norm;
  s.p10 = g2 * h / norm;
  s.p11 = 0.0;
  s.alpha = Complex(0.0, 2.0 * g * c * h / norm);
  return s;
}

XState stationary_u_infinite(const RateSet& rates, double g, double eta) {
  if (!(eta >= 0.0 && eta <= 0.5)) throw InvalidArgument("eta must lie in [0, 1/2]");
  const double cu = rates.up(Bath::Cold, 0);
  const double cd = rates.down(Bath::Cold, 0);
  const double hu = rates.up(Bath::Hot, 0);
  const double hd = rates.down(Bath::Hot, 0);
  const double g2 = 4.0 * g * g;
  const double ok = 1.0 - eta;

  const double r00 = (cd + eta * hd) * (eta * cd * hd + g2);
  const double r01 = g2 * cu + ok * hu * (cd * cd + eta * cd * hd + g2);
  const double r10 = g2 * ok * hu + cu * (eta * hd * (cd + eta * hd) + g2);
  const double a = 2.0 * g * (ok * cd * hu - eta * cu * hd);
  const double norm = 2.0 * g2 * (cu + ok * hu) + cd * (eta * hd * (cu + eta * hd + ok * hu) + g2) +
                      eta * eta * cu * hd * hd + cd * cd * (eta * hd + ok * hu) + eta * g2 * hd;
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("u_inf stationary state undefined: normalization vanishes");
  }
  XState s;
  s.p00 = r00 / norm;
  s.p01 = r01 / norm;
  s.p10 = r10 / norm;
  s.p11 = 0.0;
  s.alpha = Complex(0.0, a / norm);
  return s;
}

}  // namespace qtm

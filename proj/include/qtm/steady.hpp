#pragma once

#include <array>

#include "qtm/generators.hpp"

namespace qtm {

/// Time integration stopped at t_max before the derivative fell below tol.
class NotConverged : public Error {
 public:
  NotConverged(double t_max, const XState& last);

  double t_max() const noexcept { return t_max_; }
  const XState& last_state() const noexcept { return last_; }

 private:
  double t_max_;
  XState last_;
};

/// Relative gap below which the two smallest singular values count as equal.
inline constexpr double kDegeneracyTol = 1e-8;

/// Singular values of a generator in descending order.
std::array<double, 6> singular_values(const Matrix6& m);

/// Stationary state of a generator with a one-dimensional kernel.
///
/// The SVD decides whether the kernel is unique (throws DegenerateKernel
/// otherwise). The kernel vector itself comes from an LU solve of the system
/// with the first population row replaced by the trace constraint; this keeps
/// tiny populations accurate to relative precision, which matters because the
/// concurrence involves sqrt(p00 p11).
XState steady_state(const Matrix6& m);
XState steady_state(const Generator& gen);

/// Integrates d(rho)/dt = gen rho with adaptive Dormand-Prince steps until the
/// max-norm of the derivative drops to tol. Throws NotConverged at t_max.
XState evolve_to_steady(const Generator& gen, const XState& init, double t_max, double tol);

/// Closed-form stationary state of the ideal feedback generator. Depends only on
/// the cold relaxation rate, the hot excitation rate and g.
XState stationary_ideal(const RateSet& rates, double g);

/// Closed-form stationary state of the infinite-interaction feedback generator
/// with error probability eta. The doubly excited population vanishes.
XState stationary_u_infinite(const RateSet& rates, double g, double eta);

}  // namespace qtm

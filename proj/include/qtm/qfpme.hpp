#pragma once

// Joint system-detector dynamics: the reduced generator picked by the sign of
// the detector coordinate D, a drift gamma (a - D) towards the parity eigenvalue
// a = +1 (p00, p11) or a = -1 (p01, p10, alpha), and diffusion gamma^2 / (8 lam).
//
// Discretization is finite-volume on a uniform grid: first-order upwind drift,
// central diffusion and zero flux through both ends, so the discrete total
// trace is conserved exactly.

#include <iosfwd>
#include <vector>

#include <Eigen/Sparse>

#include "qtm/metrics.hpp"
#include "qtm/model.hpp"

namespace qtm {

/// Positivity was lost during joint time evolution.
class StabilityFailure : public Error {
 public:
  StabilityFailure(long step, double time, double min_mass);

  long step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  long step_;
  double time_;
};

/// Uniform detector grid with nodes d_min + j h (+ offset), h = (d_max - d_min) / (n - 1).
/// When a node would sit at D = 0 the whole grid is shifted by h / 2 so the
/// feedback branch is never ambiguous.
class DGrid {
 public:
  DGrid(double d_min, double d_max, int n);

  /// Bounds -1 - 6 sigma and 1 + 6 sigma with sigma = sqrt(gamma_det / (8 lam)).
  static DGrid for_params(const SystemParams& params, int n = kDefaultNodes);

  static constexpr int kDefaultNodes = 401;

  double d_min() const noexcept { return d_min_; }
  double d_max() const noexcept { return d_max_; }
  int size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double offset() const noexcept { return offset_; }
  double node(int j) const noexcept { return d_min_ + offset_ + h_ * j; }
  std::vector<double> nodes() const;

 private:
  double d_min_;
  double d_max_;
  int n_;
  double h_;
  double offset_;
};

/// Joint state: one X-state density per node. Probability is sum_j h trace(slice_j).
struct JointState {
  DGrid grid;
  std::vector<XState> slices;

  double total_trace() const;
};

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

/// Assembled joint generator acting on the stacked 6-component node vectors.
class JointGenerator {
 public:
  JointGenerator(DGrid grid, SparseMatrixC op) : grid_(std::move(grid)), op_(std::move(op)) {}

  const DGrid& grid() const noexcept { return grid_; }
  const SparseMatrixC& matrix() const noexcept { return op_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const { return op_ * x; }

 private:
  DGrid grid_;
  SparseMatrixC op_;
};

/// Assembles the joint generator. Feedback Off uses the hot-coupled generator on
/// every node; any other mode switches it off for D < 0. Rejects lam = inf.
JointGenerator build_joint_generator(const SystemParams& params, const DGrid& grid);

Eigen::VectorXcd flatten(const JointState& js);
JointState unflatten(const DGrid& grid, const Eigen::VectorXcd& v);

/// Stationary joint state from a sparse direct solve with a trace constraint.
JointState steady_joint(const SystemParams& params, const DGrid& grid);

/// Implicit time evolution (Richardson-extrapolated backward Euler with step
/// doubling control) of `init` up to t_max. tol bounds the local error measured
/// in probability mass per cell. Throws StabilityFailure when a cell mass drops
/// below -1e-6 or the trace drifts by more than 1e-6.
JointState evolve_joint(const SystemParams& params, const DGrid& grid, const JointState& init, double t_max,
                        double tol);

/// Zeroth-order fast-detector joint state: each component of `system` spread over
/// a Gaussian of variance gamma_det / (8 lam) centred on its parity eigenvalue,
/// normalized on the grid.
JointState gaussian_mixture(const SystemParams& params, const DGrid& grid, const XState& system);

/// System state: sum_j h slice_j.
XState marginal_system(const JointState& js);

/// Detector density p(D_j) = trace(slice_j).
std::vector<double> marginal_detector(const JointState& js);

/// Hot-bath heat current resolved over the detector coordinate: only nodes with
/// D > 0 exchange energy with the hot bath.
double heat_current_hot_resolved(const SystemParams& params, const JointState& js);

/// CSV dump with header D,p,p00,p01,p10,p11,re_alpha,im_alpha.
void write_joint_csv(std::ostream& os, const JointState& js);

}  // namespace qtm

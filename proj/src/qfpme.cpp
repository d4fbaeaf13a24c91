#include "qtm/qfpme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/SparseLU>

#include "qtm/generators.hpp"

namespace qtm {

namespace {

// Parity eigenvalue carried by each vectorized component.
constexpr int kParity[6] = {+1, -1, -1, +1, -1, -1};

double detector_sigma(const SystemParams& params) {
  if (params.lam.is_infinite()) throw InvalidArgument("the joint equation needs a finite lam");
  return std::sqrt(params.gamma_det / (8.0 * params.lam.value()));
}

using SparseLUC = Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>>;

}  // namespace

StabilityFailure::StabilityFailure(long step, double time, double min_mass)
    : Error([&] {
        std::ostringstream os;
        os << "joint evolution lost positivity or trace at step " << step << " (t = " << time
           << ", worst value " << min_mass << ")";
        return os.str();
      }()),
      step_(step),
      time_(time) {}

DGrid::DGrid(double d_min, double d_max, int n) : d_min_(d_min), d_max_(d_max), n_(n), h_(0.0), offset_(0.0) {
  if (!(std::isfinite(d_min) && std::isfinite(d_max))) throw InvalidArgument("grid bounds must be finite");
  if (!(d_min < -1.0 && d_max > 1.0)) throw InvalidArgument("grid must extend beyond [-1, 1]");
  if (n < 3) throw InvalidArgument("grid needs at least 3 nodes");
  h_ = (d_max - d_min) / (n - 1);
  const double j0 = std::round(-d_min / h_);
  if (j0 >= 0 && j0 < n && std::abs(d_min + j0 * h_) <= 1e-9 * h_) offset_ = 0.5 * h_;
}

DGrid DGrid::for_params(const SystemParams& params, int n) {
  const double sigma = detector_sigma(params);
  return DGrid(-1.0 - 6.0 * sigma, 1.0 + 6.0 * sigma, n);
}

std::vector<double> DGrid::nodes() const {
  std::vector<double> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

double JointState::total_trace() const {
  double sum = 0.0;
  for (const auto& s : slices) sum += s.trace();
  return sum * grid.spacing();
}

JointGenerator build_joint_generator(const SystemParams& params, const DGrid& grid) {
  params.validate();
  if (params.lam.is_infinite()) throw InvalidArgument("the joint equation needs a finite lam");
  const Matrix6 coupled = build_free(params).matrix;
  const Matrix6 decoupled = params.feedback == FeedbackMode::Off ? coupled : build_hot_decoupled(params).matrix;

  const int n = grid.size();
  const double h = grid.spacing();
  const double gamma = params.gamma_det;
  const double diffusion = gamma * gamma / (8.0 * params.lam.value()) / (h * h);

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * (36 + 24));
  for (int j = 0; j < n; ++j) {
    const Matrix6& local = grid.node(j) > 0.0 ? coupled : decoupled;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        if (local(a, b) != Complex(0.0)) triplets.emplace_back(6 * j + a, 6 * j + b, local(a, b));
      }
    }
  }
  // Flux through the face between nodes j and j+1, for each component.
  for (int c = 0; c < 6; ++c) {
    for (int j = 0; j + 1 < n; ++j) {
      const int left = 6 * j + c;
      const int right = 6 * (j + 1) + c;
      const double face = 0.5 * (grid.node(j) + grid.node(j + 1));
      const double v = gamma * (kParity[c] - face) / h;
      if (v > 0.0) {
        triplets.emplace_back(left, left, -v);
        triplets.emplace_back(right, left, v);
      } else {
        triplets.emplace_back(left, right, -v);
        triplets.emplace_back(right, right, v);
      }
      triplets.emplace_back(left, left, -diffusion);
      triplets.emplace_back(left, right, diffusion);
      triplets.emplace_back(right, right, -diffusion);
      triplets.emplace_back(right, left, diffusion);
    }
  }
  SparseMatrixC op(6 * n, 6 * n);
  op.setFromTriplets(triplets.begin(), triplets.end());
  op.makeCompressed();
  return JointGenerator(grid, std::move(op));
}

Eigen::VectorXcd flatten(const JointState& js) {
  const int n = js.grid.size();
  if (static_cast<int>(js.slices.size()) != n) throw InvalidArgument("joint state size does not match its grid");
  Eigen::VectorXcd v(6 * n);
  for (int j = 0; j < n; ++j) v.segment<6>(6 * j) = vectorize(js.slices[j]);
  return v;
}

JointState unflatten(const DGrid& grid, const Eigen::VectorXcd& v) {
  const int n = grid.size();
  if (v.size() != 6 * n) throw InvalidArgument("vector size does not match the grid");
  JointState js{grid, std::vector<XState>(n)};
  for (int j = 0; j < n; ++j) {
    const Vector6 s = v.segment<6>(6 * j);
    XState& x = js.slices[j];
    x.p00 = s(kP00).real();
    x.p01 = s(kP01).real();
    x.p10 = s(kP10).real();
    x.p11 = s(kP11).real();
    x.alpha = 0.5 * (s(kAlpha) + std::conj(s(kAlphaConj)));
  }
  return js;
}

JointState steady_joint(const SystemParams& params, const DGrid& grid) {
  const JointGenerator gen = build_joint_generator(params, grid);
  const int n = grid.size();
  const double h = grid.spacing();

  // The p00 equation of node 0 is implied by the others (total trace is
  // conserved); replace it by the normalization.
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(gen.matrix().nonZeros() + 4 * n);
  for (int k = 0; k < gen.matrix().outerSize(); ++k) {
    for (SparseMatrixC::InnerIterator it(gen.matrix(), k); it; ++it) {
      if (it.row() != 0) triplets.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int c = kP00; c <= kP11; ++c) triplets.emplace_back(0, 6 * j + c, h);
  }
  SparseMatrixC a(6 * n, 6 * n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  SparseLUC lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw NoConvergence("sparse factorization of the joint generator failed");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(6 * n);
  rhs(0) = 1.0;
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) throw NoConvergence("joint steady solve failed");
  return unflatten(grid, x);
}

namespace {

double min_cell_mass(const Eigen::VectorXcd& v, double h) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v.size(); i += 6) {
    for (int c = kP00; c <= kP11; ++c) worst = std::min(worst, h * v(i + c).real());
  }
  return worst;
}

double total_mass(const Eigen::VectorXcd& v, double h) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); i += 6) {
    for (int c = kP00; c <= kP11; ++c) sum += v(i + c).real();
  }
  return h * sum;
}

// Factorizations of (I - dt G), cached per step size.
class ImplicitStepper {
 public:
  explicit ImplicitStepper(const SparseMatrixC& g) : g_(g) {
    identity_.resize(g.rows(), g.cols());
    identity_.setIdentity();
  }

  Eigen::VectorXcd backward_euler(double dt, const Eigen::VectorXcd& y) {
    SparseLUC& lu = factor(dt);
    Eigen::VectorXcd out = lu.solve(y);
    if (lu.info() != Eigen::Success) throw NoConvergence("implicit step solve failed");
    return out;
  }

 private:
  SparseLUC& factor(double dt) {
    auto it = cache_.find(dt);
    if (it != cache_.end()) return *it->second;
    if (cache_.size() >= 12) cache_.clear();
    auto lu = std::make_unique<SparseLUC>();
    SparseMatrixC a = identity_ - dt * g_;
    a.makeCompressed();
    lu->compute(a);
    if (lu->info() != Eigen::Success) throw NoConvergence("implicit step factorization failed");
    return *cache_.emplace(dt, std::move(lu)).first->second;
  }

  const SparseMatrixC& g_;
  SparseMatrixC identity_;
  std::map<double, std::unique_ptr<SparseLUC>> cache_;
};

}  // namespace

JointState evolve_joint(const SystemParams& params, const DGrid& grid, const JointState& init, double t_max,
                        double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be finite and >= 0");
  if (std::abs(init.total_trace() - 1.0) > 1e-6) throw InvalidArgument("initial joint state is not normalized");

  const JointGenerator gen = build_joint_generator(params, grid);
  ImplicitStepper stepper(gen.matrix());
  const double h = grid.spacing();
  Eigen::VectorXcd y = flatten(init);
  const double trace0 = total_mass(y, h);

  // Step sizes are powers of two times a base step so factorizations are reused.
  const double base = 1.0 / (params.gamma_det * 64.0);
  int level = 0;
  double t = 0.0;
  long step = 0;
  while (t < t_max) {
    double dt = std::ldexp(base, level);
    const bool last = t + dt >= t_max;
    if (last) dt = t_max - t;

    const Eigen::VectorXcd full = stepper.backward_euler(dt, y);
    const Eigen::VectorXcd half = stepper.backward_euler(0.5 * dt, stepper.backward_euler(0.5 * dt, y));
    const double err = h * (half - full).cwiseAbs().maxCoeff();
    if (err > tol && dt > 1e-12 * base) {
      --level;
      continue;
    }
    y = 2.0 * half - full;
    t = last ? t_max : t + dt;
    ++step;

    const double worst = min_cell_mass(y, h);
    if (worst < -1e-6) throw StabilityFailure(step, t, worst);
    const double drift = std::abs(total_mass(y, h) - trace0);
    if (drift > 1e-6) throw StabilityFailure(step, t, drift);

    if (err < 0.1 * tol && level < 40) ++level;
  }
  return unflatten(grid, y);
}

JointState gaussian_mixture(const SystemParams& params, const DGrid& grid, const XState& system) {
  params.validate();
  const double sigma = detector_sigma(params);
  const int n = grid.size();
  const double h = grid.spacing();

  // Two normalized discrete profiles, one per parity eigenvalue.
  std::vector<double> even(n), odd(n);
  double sum_even = 0.0, sum_odd = 0.0;
  for (int j = 0; j < n; ++j) {
    const double d = grid.node(j);
    even[j] = std::exp(-0.5 * (d - 1.0) * (d - 1.0) / (sigma * sigma));
    odd[j] = std::exp(-0.5 * (d + 1.0) * (d + 1.0) / (sigma * sigma));
    sum_even += h * even[j];
    sum_odd += h * odd[j];
  }
  JointState js{grid, std::vector<XState>(n)};
  for (int j = 0; j < n; ++j) {
    const double we = even[j] / sum_even;
    const double wo = odd[j] / sum_odd;
    XState& s = js.slices[j];
    s.p00 = we * system.p00;
    s.p11 = we * system.p11;
    s.p01 = wo * system.p01;
    s.p10 = wo * system.p10;
    s.alpha = wo * system.alpha;
  }
  return js;
}

XState marginal_system(const JointState& js) {
  XState out{0.0, 0.0, 0.0, 0.0, Complex{}};
  for (const auto& s : js.slices) {
    out.p00 += s.p00;
    out.p01 += s.p01;
    out.p10 += s.p10;
    out.p11 += s.p11;
    out.alpha += s.alpha;
  }
  const double h = js.grid.spacing();
  out.p00 *= h;
  out.p01 *= h;
  out.p10 *= h;
  out.p11 *= h;
  out.alpha *= h;
  return out;
}

std::vector<double> marginal_detector(const JointState& js) {
  std::vector<double> p(js.slices.size());
  std::transform(js.slices.begin(), js.slices.end(), p.begin(), [](const XState& s) { return s.trace(); });
  return p;
}

double heat_current_hot_resolved(const SystemParams& params, const JointState& js) {
  const RateSet r = make_rates(params);
  const double eps = params.epsilon;
  const bool finite_u = !params.u.is_infinite();
  const double e1 = finite_u ? eps + params.u.value() : 0.0;
  const bool switching = params.feedback != FeedbackMode::Off;
  double q = 0.0;
  for (int j = 0; j < js.grid.size(); ++j) {
    if (switching && js.grid.node(j) < 0.0) continue;
    const XState& s = js.slices[j];
    q += eps * r.down(Bath::Hot, 0) * s.p01 - eps * r.up(Bath::Hot, 0) * s.p00;
    if (finite_u) q += e1 * r.down(Bath::Hot, 1) * s.p11 - e1 * r.up(Bath::Hot, 1) * s.p10;
  }
  return q * js.grid.spacing();
}

void write_joint_csv(std::ostream& os, const JointState& js) {
  os << "D,p,p00,p01,p10,p11,re_alpha,im_alpha\n";
  char buf[512];
  // Adding 0.0 turns negative zeros into plain zeros.
  for (int j = 0; j < js.grid.size(); ++j) {
    const XState& s = js.slices[j];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", js.grid.node(j),
                  s.trace() + 0.0, s.p00 + 0.0, s.p01 + 0.0, s.p10 + 0.0, s.p11 + 0.0, s.alpha.real() + 0.0,
                  s.alpha.imag() + 0.0);
    os << buf;
  }
}

}  // namespace qtm

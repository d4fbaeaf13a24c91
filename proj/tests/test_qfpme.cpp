#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qtm/generators.hpp"
#include "qtm/qfpme.hpp"
#include "qtm/sampling.hpp"
#include "qtm/steady.hpp"

using namespace qtm;

namespace {

// Fast-detector parameters with every system rate 100 times slower than gamma.
SystemParams fast_detector(double ratio = 100.0) {
  SystemParams p;
  p.feedback = FeedbackMode::General;
  p.u = 0.0;
  p.gamma_c = 1e-3;
  p.gamma_h = 0.1;
  p.g = p.gamma_c / (2.0 * std::numbers::sqrt2);
  p.t_c = 0.1;
  p.t_h = 1.0;
  p.gamma_det = ratio * std::max(p.g, make_rates(p).max_rate());
  p.lam = 100.0 * p.gamma_det;
  return p;
}

// No system dynamics: only the detector moves.
SystemParams frozen(double lam) {
  SystemParams p;
  p.gamma_det = 1.0;
  p.lam = lam;
  return p;
}

JointState delta_state(const DGrid& grid, int node, const XState& s) {
  JointState js{grid, std::vector<XState>(grid.size(), XState{0.0, 0.0, 0.0, 0.0, 0.0})};
  XState& slice = js.slices[node];
  const double w = 1.0 / grid.spacing();
  slice = XState{w * s.p00, w * s.p01, w * s.p10, w * s.p11, w * s.alpha};
  return js;
}

std::pair<double, double> detector_moments(const JointState& js) {
  const auto p = marginal_detector(js);
  const double h = js.grid.spacing();
  double mean = 0.0, second = 0.0;
  for (int j = 0; j < js.grid.size(); ++j) {
    const double d = js.grid.node(j);
    mean += h * d * p[j];
    second += h * d * d * p[j];
  }
  return {mean, second - mean * mean};
}

}  // namespace

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(DGrid(-0.5, 2.0, 11), InvalidArgument);
  CHECK_THROWS_AS(DGrid(-2.0, 2.0, 2), InvalidArgument);
  const DGrid symmetric(-2.0, 2.0, 11);
  CHECK(symmetric.spacing() == doctest::Approx(0.4));
  CHECK(symmetric.offset() == doctest::Approx(0.2));
  for (double d : symmetric.nodes()) CHECK(d != 0.0);
  const DGrid even(-2.0, 2.0, 10);
  CHECK(even.offset() == 0.0);

  SystemParams p = frozen(2.0);
  const DGrid g = DGrid::for_params(p);
  const double sigma = std::sqrt(1.0 / 16.0);
  CHECK(g.d_max() == doctest::Approx(1.0 + 6.0 * sigma));
  CHECK(g.d_min() == doctest::Approx(-1.0 - 6.0 * sigma));
  CHECK(g.size() == DGrid::kDefaultNodes);
}

TEST_CASE("joint generator preserves the total trace") {
  std::mt19937_64 rng(30);
  const SystemParams p = sample_params(rng, Regime::General);
  const DGrid grid = DGrid::for_params(p, 101);
  const JointGenerator gen = build_joint_generator(p, grid);
  for (int k = 0; k < 5; ++k) {
    JointState js{grid, {}};
    for (int j = 0; j < grid.size(); ++j) js.slices.push_back(sample_xstate(rng));
    const JointState d = unflatten(grid, gen.apply(flatten(js)));
    CHECK(std::abs(d.total_trace()) <= 1e-12 * gen.matrix().cwiseAbs().sum() / grid.size());
  }
  SystemParams inf = p;
  inf.lam = ExtendedReal::infinite();
  CHECK_THROWS_AS(build_joint_generator(inf, grid), InvalidArgument);
}

TEST_CASE("drift pushes even states towards +1 and odd states towards -1") {
  const SystemParams p = frozen(1.0);
  const DGrid grid = DGrid::for_params(p, 201);
  const JointGenerator gen = build_joint_generator(p, grid);
  const int mid = grid.size() / 2;
  for (auto [state, sign] : {std::pair{XState{1, 0, 0, 0, 0}, 1.0}, std::pair{XState{0, 1, 0, 0, 0}, -1.0}}) {
    const JointState js = delta_state(grid, mid, state);
    const JointState d = unflatten(grid, gen.apply(flatten(js)));
    double mean_rate = 0.0;
    for (int j = 0; j < grid.size(); ++j) mean_rate += grid.spacing() * grid.node(j) * d.slices[j].trace();
    CHECK(mean_rate * sign > 0.0);
  }
}

TEST_CASE("frozen system: detector relaxes to the Ornstein-Uhlenbeck stationary law") {
  const double lam = 2.0;
  const SystemParams p = frozen(lam);
  const DGrid grid = DGrid::for_params(p, 401);
  const int mid = grid.size() / 2;
  const JointState init = delta_state(grid, mid, XState{0, 1, 0, 0, 0});

  // Mean relaxes as e^{-gamma t} towards -1; the variance saturates at gamma / (8 lam).
  const double target_var = p.gamma_det / (8.0 * lam);
  const JointState early = evolve_joint(p, grid, init, 0.5, 1e-6);
  const JointState late = evolve_joint(p, grid, init, 20.0, 1e-6);
  const auto [m_early, v_early] = detector_moments(early);
  const auto [m_late, v_late] = detector_moments(late);
  const double d0 = grid.node(mid);
  CHECK(m_early == doctest::Approx(-1.0 + (d0 + 1.0) * std::exp(-0.5)).epsilon(1e-2));
  CHECK(v_early == doctest::Approx(target_var * (1.0 - std::exp(-1.0))).epsilon(0.05));
  CHECK(m_late == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(v_late == doctest::Approx(target_var).epsilon(0.05));
  CHECK(late.total_trace() == doctest::Approx(1.0).epsilon(1e-10));
  // The system state never changes.
  CHECK(trace_distance(marginal_system(late), XState{0, 1, 0, 0, 0}) <= 1e-10);
}

TEST_CASE("fast-detector steady state") {
  const SystemParams p = fast_detector();
  const DGrid grid = DGrid::for_params(p);
  const JointState js = steady_joint(p, grid);
  CHECK(js.total_trace() == doctest::Approx(1.0).epsilon(1e-10));
  const XState sys = marginal_system(js);
  CHECK_NOTHROW(sys.check(1e-6));
  const XState reduced = steady_state(build_generator(p));
  CHECK(trace_distance(sys, reduced) <= 1e-3);

  double integral = 0.0;
  for (double v : marginal_detector(js)) integral += grid.spacing() * v;
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));

  const double q_hot = heat_current_hot_resolved(p, js);
  const double q_cold = heat_current_general(reduced, make_rates(p), p).q_dot_c;
  CHECK(q_hot == doctest::Approx(-q_cold).epsilon(1e-2));
}

TEST_CASE("Gaussian mixture of the reduced state is nearly stationary") {
  const SystemParams p = fast_detector();
  const DGrid grid = DGrid::for_params(p);
  const XState reduced = steady_state(build_generator(p));
  const JointState init = gaussian_mixture(p, grid, reduced);
  CHECK(init.total_trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(marginal_system(init), reduced) <= 1e-12);
  const JointState out = evolve_joint(p, grid, init, 10.0 / p.gamma_c, 1e-7);
  CHECK(out.total_trace() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(trace_distance(marginal_system(out), reduced) <= 1e-3);
}

TEST_CASE("first-order convergence under grid refinement") {
  for (double ratio : {1.0, 100.0}) {
    SystemParams p = fast_detector(10.0);
    p.lam = ratio * p.gamma_det;
    std::vector<XState> marginals;
    for (int n : {201, 401, 801, 1601}) marginals.push_back(marginal_system(steady_joint(p, DGrid::for_params(p, n))));
    for (std::size_t i = 0; i + 2 < marginals.size(); ++i) {
      const double coarse = trace_distance(marginals[i], marginals[i + 1]);
      const double fine = trace_distance(marginals[i + 1], marginals[i + 2]);
      CHECK(fine / coarse >= 0.3);
      CHECK(fine / coarse <= 0.7);
    }
  }
}

TEST_CASE("feedback off never switches the hot bath") {
  SystemParams p = fast_detector();
  p.feedback = FeedbackMode::Off;
  const XState sys = marginal_system(steady_joint(p, DGrid::for_params(p)));
  CHECK(trace_distance(sys, steady_state(build_free(p))) <= 1e-9);
}

TEST_CASE("joint csv dump") {
  const SystemParams p = frozen(1.0);
  const DGrid grid(-2.0, 2.0, 5);
  std::ostringstream os;
  write_joint_csv(os, gaussian_mixture(p, grid, XState{}));
  const std::string text = os.str();
  CHECK(text.rfind("D,p,p00,p01,p10,p11,re_alpha,im_alpha\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("input checks") {
  const SystemParams p = frozen(1.0);
  const DGrid grid(-2.0, 2.0, 21);
  JointState js = gaussian_mixture(p, grid, XState{});
  js.slices[3].p00 += 5.0;
  CHECK_THROWS_AS(evolve_joint(p, grid, js, 1.0, 1e-6), InvalidArgument);
  CHECK_THROWS_AS(evolve_joint(p, grid, gaussian_mixture(p, grid, XState{}), 1.0, 0.0), InvalidArgument);
}

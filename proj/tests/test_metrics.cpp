#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qtm/generators.hpp"
#include "qtm/metrics.hpp"
#include "qtm/sampling.hpp"
#include "qtm/steady.hpp"

using namespace qtm;

namespace {

using Matrix2 = Eigen::Matrix<Complex, 2, 2>;

// Singlet fraction by brute force: the maximally entangled states are
// (1 x V)|Phi+> for V in U(2); scan V over a grid of SU(2) angles.
double singlet_fraction_brute(const Matrix4& rho) {
  const double pi = std::numbers::pi;
  double best = 0.0;
  const int n = 48;
  for (int a = 0; a <= n; ++a) {
    const double theta = pi / 2 * a / n;
    for (int b = 0; b < 2 * n; ++b) {
      const double phi = pi * b / n;
      for (int c = 0; c < 2 * n; ++c) {
        const double chi = pi * c / n;
        Matrix2 v;
        v << std::polar(std::cos(theta), phi), std::polar(std::sin(theta), chi),
            -std::polar(std::sin(theta), -chi), std::polar(std::cos(theta), -phi);
        Eigen::Matrix<Complex, 4, 1> psi;
        // (1 x V)(|00> + |11>) / sqrt 2
        psi << v(0, 0), v(1, 0), v(0, 1), v(1, 1);
        psi /= std::sqrt(2.0);
        best = std::max(best, (psi.adjoint() * rho * psi)(0, 0).real());
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("Bell and product states") {
  const XState bell{0.0, 0.5, 0.5, 0.0, 0.5};
  CHECK(concurrence_x(bell) == doctest::Approx(1.0));
  CHECK(chsh_x(bell) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(teleportation_fidelity(bell) == doctest::Approx(1.0));
  const XState ground{};
  CHECK(concurrence_x(ground) == 0.0);
  CHECK(chsh_x(ground) == doctest::Approx(2.0));
  CHECK(teleportation_fidelity(ground) == doctest::Approx(2.0 / 3.0));
  const XState mixed{0.25, 0.25, 0.25, 0.25, 0.0};
  CHECK(concurrence_x(mixed) == 0.0);
  CHECK(chsh_x(mixed) == 0.0);
  CHECK(singlet_fraction_x(mixed) == doctest::Approx(0.25));
}

TEST_CASE("X-state formulas agree with the general ones") {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 300; ++i) {
    const XState s = sample_xstate(rng);
    const Matrix4 rho = to_dense(s);
    CHECK(concurrence_x(s) == doctest::Approx(concurrence_wootters(rho)).epsilon(1e-9));
    CHECK(chsh_x(s) == doctest::Approx(chsh_horodecki(rho)).epsilon(1e-9));
  }
}

TEST_CASE("singlet fraction agrees with a brute-force maximization") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 8; ++i) {
    const XState s = sample_xstate(rng);
    const double brute = singlet_fraction_brute(to_dense(s));
    CHECK(singlet_fraction_x(s) >= brute - 1e-12);
    CHECK(singlet_fraction_x(s) <= brute + 5e-3);
  }
}

TEST_CASE("general formulas reject non-density matrices") {
  Matrix4 rho = to_dense(XState{});
  rho(0, 0) = 2.0;
  CHECK_THROWS_AS(concurrence_wootters(rho), InvalidArgument);
  rho = to_dense(XState{0.5, 0.0, 0.0, 0.5, 0.0});
  rho(0, 3) = 0.6;
  rho(3, 0) = 0.6;
  CHECK_THROWS_AS(chsh_horodecki(rho), InvalidArgument);
  rho(3, 0) = 0.5;
  CHECK_THROWS_AS(chsh_horodecki(rho), InvalidArgument);
}

TEST_CASE("heat current matches the dense cold-bath energy flow") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    SystemParams p = sample_params(rng, static_cast<Regime>(i % 3));
    if (p.u.is_infinite()) p.u = 1.5;
    const XState s = steady_state(build_generator(p));
    const RateSet r = make_rates(p);
    const Matrix4 h = oracle::hamiltonian(p);
    const double cold = -(h * oracle::cold_part(r, to_dense(s))).trace().real();
    const HeatCurrents q = heat_current_general(s, r, p);
    CHECK(q.q_dot_c == doctest::Approx(cold).epsilon(1e-9).scale(r.max_rate()));
    CHECK(q.q_dot_h == -q.q_dot_c);
    CHECK(q.balanced);
  }
}

TEST_CASE("non-stationary states are flagged") {
  SystemParams p;
  p.g = 0.1;
  p.gamma_c = 0.1;
  p.gamma_h = 0.1;
  p.t_c = 0.1;
  p.t_h = 1.0;
  const XState s{0.25, 0.25, 0.25, 0.25, 0.0};
  CHECK_FALSE(heat_current_general(s, make_rates(p), p).balanced);
  CHECK_FALSE(compute_metrics(s, p).heat_balanced);
}

TEST_CASE("ideal heat current is proportional to concurrence") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = sample_params(rng, Regime::Ideal);
    const MetricsRecord m = compute_metrics(steady_state(build_generator(p)), p);
    CHECK(m.q_dot_c == doctest::Approx(p.epsilon * p.g * m.concurrence).epsilon(1e-9));
  }
}

TEST_CASE("trace distance") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    const XState a = sample_xstate(rng), b = sample_xstate(rng);
    Eigen::SelfAdjointEigenSolver<Matrix4> es(to_dense(a) - to_dense(b), Eigen::EigenvaluesOnly);
    CHECK(trace_distance(a, b) == doctest::Approx(0.5 * es.eigenvalues().cwiseAbs().sum()).epsilon(1e-12));
  }
  const XState s{0.1, 0.4, 0.3, 0.2, 0.1};
  CHECK(trace_distance(s, s) == 0.0);
}

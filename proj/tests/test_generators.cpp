#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qtm/generators.hpp"
#include "qtm/sampling.hpp"

using namespace qtm;

namespace {

double max_diff(const Matrix4& a, const Matrix4& b) { return (a - b).cwiseAbs().maxCoeff(); }

SystemParams finite_u(SystemParams p) {
  if (p.u.is_infinite()) p.u = 3.0;
  return p;
}

}  // namespace

TEST_CASE("mistake probability") {
  CHECK(feedback_error(ExtendedReal::infinite(), 1.0).eta == 0.0);
  for (double r : {1e-4, 0.01, 0.1, 0.5, 1.0, 2.0}) {
    const double expected = 0.5 * (1.0 - oracle::erf_series(2.0 * std::sqrt(r)));
    CHECK(feedback_error(3.0 * r, 3.0).eta == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(feedback_error(1e-14, 1.0).eta == doctest::Approx(0.5));
  CHECK(feedback_error(1e4, 1.0).eta < 1e-80);
}

TEST_CASE("free generator matches the dense Lindblad equation") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    const SystemParams p = finite_u(sample_params(rng, Regime::Free));
    const Generator gen = build_free(p);
    const XState s = sample_xstate(rng);
    const Matrix4 got = oracle::dense_from_vector(gen.matrix * vectorize(s));
    const Matrix4 want = oracle::free_rhs(p, to_dense(s));
    CHECK(max_diff(got, want) <= 1e-14 * (1.0 + gen.matrix.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("general feedback matches parity-weighted hot dissipation") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    const SystemParams p = finite_u(sample_params(rng, Regime::General));
    const double eta = feedback_error(p.lam, p.gamma_det).eta;
    const Generator gen = build_feedback_general(p);
    const XState s = sample_xstate(rng);
    const Matrix4 got = oracle::dense_from_vector(gen.matrix * vectorize(s));
    const Matrix4 want = oracle::feedback_rhs(p, eta, to_dense(s));
    CHECK(max_diff(got, want) <= 1e-14 * (1.0 + gen.matrix.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("general feedback entries for the doubly excited sector") {
  SystemParams p;
  p.g = 0.1;
  p.gamma_c = 0.2;
  p.gamma_h = 0.3;
  p.t_c = 0.4;
  p.t_h = 1.5;
  p.u = 0.5;
  p.lam = 0.05;
  p.feedback = FeedbackMode::General;
  const RateSet r = make_rates(p);
  const double eta = feedback_error(p.lam, p.gamma_det).eta;
  const Matrix6 m = build_feedback_general(p).matrix;
  CHECK(m(kP10, kP10).real() == doctest::Approx(-r.down(Bath::Cold, 0) - eta * r.up(Bath::Hot, 1)));
  CHECK(m(kP11, kP10).real() == doctest::Approx(eta * r.up(Bath::Hot, 1)));
  const double decay = -0.5 * (r.up(Bath::Cold, 1) + r.down(Bath::Cold, 0) +
                               eta * (r.down(Bath::Hot, 0) + r.up(Bath::Hot, 1)));
  CHECK(m(kAlpha, kAlpha).real() == doctest::Approx(decay));
  CHECK(m(kAlpha, kAlpha).imag() == 0.0);
}

TEST_CASE("hot-decoupled generator has no hot rates") {
  std::mt19937_64 rng(4);
  const SystemParams p = finite_u(sample_params(rng, Regime::Free));
  SystemParams cold_only = p;
  cold_only.gamma_h = 0.0;
  CHECK(build_hot_decoupled(p).matrix == build_free(cold_only).matrix);
}

TEST_CASE("closed-form generators are limits of the general one") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    SystemParams p = sample_params(rng, Regime::Ideal);
    SystemParams q = p;
    q.feedback = FeedbackMode::General;
    CHECK((build_feedback_ideal(p).matrix - build_feedback_general(q).matrix).cwiseAbs().maxCoeff() == 0.0);

    p = sample_params(rng, Regime::UInfinite);
    q = p;
    q.feedback = FeedbackMode::General;
    CHECK((build_feedback_u_infinite(p).matrix - build_feedback_general(q).matrix).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("general feedback without mistakes reduces to the ideal feedback state space") {
  SystemParams p;
  p.g = 0.1;
  p.gamma_c = 0.2;
  p.gamma_h = 0.3;
  p.t_c = 0.0;
  p.t_h = 1.0;
  p.u = 2.0;
  const Matrix6 m = build_feedback_general(p).matrix;
  // With eta = 0 the hot bath never touches odd-parity columns.
  const RateSet r = make_rates(p);
  CHECK(m(kP11, kP10).real() == 0.0);
  CHECK(m(kP01, kP00).real() == doctest::Approx(r.up(Bath::Hot, 0)));
}

TEST_CASE("dispatch and preconditions") {
  std::mt19937_64 rng(6);
  SystemParams p = sample_params(rng, Regime::Free);
  CHECK(build_generator(p).kind == GeneratorKind::Free);
  p.feedback = FeedbackMode::General;
  CHECK(build_generator(p).kind == GeneratorKind::FeedbackGeneral);
  CHECK(to_string(GeneratorKind::FeedbackIdeal) == "feedback_ideal");

  p = sample_params(rng, Regime::General);
  p.t_c = 0.1;
  CHECK_THROWS_AS(build_feedback_ideal(p), InvalidArgument);
  p.u = 1.0;
  CHECK_THROWS_AS(build_feedback_u_infinite(p), InvalidArgument);
  p.gamma_c = -1.0;
  CHECK_THROWS_AS(build_generator(p), InvalidArgument);
}

TEST_CASE("trace preservation and hermiticity for every generator kind") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = sample_params(rng, static_cast<Regime>(i % 4));
    for (const Generator& gen : {build_free(p), build_hot_decoupled(p), build_generator(p)}) {
      const Matrix6& m = gen.matrix;
      for (int c = 0; c < 6; ++c) CHECK(std::abs(m.block<4, 1>(0, c).sum()) <= 1e-15);
      CHECK(std::abs(m(kAlphaConj, kAlphaConj) - std::conj(m(kAlpha, kAlpha))) == 0.0);
      CHECK(std::abs(m(kAlphaConj, kP01) - std::conj(m(kAlpha, kP01))) == 0.0);
    }
  }
}

#include <doctest.h>

#include <cmath>

#include "qtm/optimize.hpp"

using namespace qtm;

TEST_CASE("finds the maximum of a smooth bump") {
  auto f = [](std::span<const double> x) { return 3.0 - (x[0] - 0.3) * (x[0] - 0.3) - 2.0 * (x[1] + 1.2) * (x[1] + 1.2); };
  const SearchResult r = maximize_random_restart(f, {{-2.0, -2.0}, {2.0, 2.0}}, 3, 1);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(-1.2).epsilon(1e-4));
  CHECK(r.evaluations > 0);
}

TEST_CASE("maximum on the boundary is clamped into the box") {
  auto f = [](std::span<const double> x) { return x[0]; };
  const SearchResult r = maximize_random_restart(f, {{0.0}, {1.0}}, 2, 2);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.x[0] <= 1.0);
}

TEST_CASE("random restarts escape a local maximum") {
  auto f = [](std::span<const double> x) {
    return std::exp(-(x[0] + 1.0) * (x[0] + 1.0) * 20.0) + 2.0 * std::exp(-(x[0] - 1.5) * (x[0] - 1.5) * 20.0);
  };
  const SearchResult r = maximize_random_restart(f, {{-2.0}, {2.0}}, 20, 3);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("deterministic for a fixed seed") {
  auto f = [](std::span<const double> x) { return -std::abs(x[0] - 0.1) - std::abs(x[1]); };
  const SearchBox box{{-1.0, -1.0}, {1.0, 1.0}};
  CHECK(maximize_random_restart(f, box, 4, 9).x == maximize_random_restart(f, box, 4, 9).x);
}

TEST_CASE("bad inputs") {
  auto f = [](std::span<const double>) { return 0.0; };
  CHECK_THROWS_AS(maximize_random_restart(f, {{0.0}, {1.0, 2.0}}, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(maximize_random_restart(f, {{0.0}, {1.0}}, 0, 1), InvalidArgument);
}

TEST_CASE("no-feedback search returns a valid parameter set") {
  const NoFeedbackOptimum r = maximize_no_feedback_concurrence(BathStatistics::Bosonic, 8, 4);
  CHECK(r.concurrence > 0.0);
  CHECK(r.concurrence < 0.2);
  CHECK_NOTHROW(r.params.validate());
  CHECK(r.params.feedback == FeedbackMode::Off);
  CHECK(r.params.u == ExtendedReal(0.0));
}

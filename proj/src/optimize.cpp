#include "qtm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "qtm/generators.hpp"
#include "qtm/metrics.hpp"
#include "qtm/steady.hpp"

namespace qtm {

namespace {

struct Objective {
  const std::function<double(std::span<const double>)>* f;
  const SearchBox* box;
  std::vector<double> scratch;
  long evaluations = 0;
};

double negated(const gsl_vector* x, void* data) {
  auto* obj = static_cast<Objective*>(data);
  for (std::size_t i = 0; i < obj->scratch.size(); ++i) {
    obj->scratch[i] = std::clamp(gsl_vector_get(x, i), obj->box->lower[i], obj->box->upper[i]);
  }
  ++obj->evaluations;
  const double v = (*obj->f)(obj->scratch);
  return std::isfinite(v) ? -v : 0.0;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

}  // namespace

SearchResult maximize_random_restart(const std::function<double(std::span<const double>)>& f,
                                     const SearchBox& box, int restarts, std::uint64_t seed) {
  const std::size_t dim = box.lower.size();
  if (dim == 0 || box.upper.size() != dim) throw InvalidArgument("search box dimensions are inconsistent");
  if (restarts < 1) throw InvalidArgument("need at least one restart");
  gsl_set_error_handler_off();

  std::mt19937_64 rng(seed);
  Objective obj{&f, &box, std::vector<double>(dim)};
  gsl_multimin_function fn{&negated, dim, &obj};

  SearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> nm(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(dim));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(dim));

  for (int r = 0; r < restarts; ++r) {
    for (std::size_t i = 0; i < dim; ++i) {
      gsl_vector_set(x.get(), i, std::uniform_real_distribution<double>(box.lower[i], box.upper[i])(rng));
      gsl_vector_set(step.get(), i, 0.1 * (box.upper[i] - box.lower[i]));
    }
    gsl_multimin_fminimizer_set(nm.get(), &fn, x.get(), step.get());
    for (int it = 0; it < 4000; ++it) {
      if (gsl_multimin_fminimizer_iterate(nm.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm.get()), 1e-7) == GSL_SUCCESS) break;
    }
    const double value = -gsl_multimin_fminimizer_minimum(nm.get());
    if (value > best.value) {
      best.value = value;
      best.x.resize(dim);
      const gsl_vector* xm = gsl_multimin_fminimizer_x(nm.get());
      for (std::size_t i = 0; i < dim; ++i) best.x[i] = std::clamp(gsl_vector_get(xm, i), box.lower[i], box.upper[i]);
    }
  }
  best.evaluations = obj.evaluations;
  return best;
}

namespace {

// Coordinates: log10 of g, gamma_c, gamma_h, t_c, t_h and (fermions) u.
SystemParams decode(std::span<const double> x, BathStatistics statistics) {
  SystemParams p;
  p.statistics = statistics;
  p.feedback = FeedbackMode::Off;
  p.g = std::pow(10.0, x[0]);
  p.gamma_c = std::pow(10.0, x[1]);
  p.gamma_h = std::pow(10.0, x[2]);
  p.t_c = std::pow(10.0, x[3]);
  p.t_h = std::pow(10.0, x[4]);
  p.u = x.size() > 5 ? std::pow(10.0, x[5]) : 0.0;
  return p;
}

}  // namespace

NoFeedbackOptimum maximize_no_feedback_concurrence(BathStatistics statistics, int restarts, std::uint64_t seed) {
  SearchBox box{{-3.0, -3.0, -3.0, -3.0, -1.0}, {1.0, 1.0, 1.0, 1.0, 3.0}};
  if (statistics == BathStatistics::Fermionic) {
    box.lower.push_back(-2.0);
    box.upper.push_back(3.0);
  }
  auto objective = [statistics](std::span<const double> x) {
    const SystemParams p = decode(x, statistics);
    constexpr double kInfeasible = -1.0;
    if (p.t_c > p.t_h) return kInfeasible;
    // Concurrence before clipping at zero, so separable regions still have a slope.
    try {
      const XState s = steady_state(build_free(p));
      return 2.0 * (std::abs(s.alpha) - std::sqrt(s.p00 * s.p11));
    } catch (const Error&) {
      return kInfeasible;
    }
  };
  const SearchResult r = maximize_random_restart(objective, box, restarts, seed);
  return {std::max(r.value, 0.0), decode(r.x, statistics)};
}

}  // namespace qtm

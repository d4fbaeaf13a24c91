#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qtm/model.hpp"

namespace qtm {

struct SearchBox {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct SearchResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
};

/// Maximizes f over a box with Nelder-Mead simplex runs from uniformly drawn
/// starting points. Points outside the box are clamped onto it before f sees them.
SearchResult maximize_random_restart(const std::function<double(std::span<const double>)>& f,
                                     const SearchBox& box, int restarts, std::uint64_t seed);

struct NoFeedbackOptimum {
  double concurrence = 0.0;
  SystemParams params;
};

/// Largest stationary concurrence without feedback, searched over g, both bare
/// rates, both temperatures (in log space, epsilon = 1) and, for fermions, the
/// interaction U. Bosonic reservoirs keep U = 0.
NoFeedbackOptimum maximize_no_feedback_concurrence(BathStatistics statistics, int restarts, std::uint64_t seed);

}  // namespace qtm

#pragma once

// INI-style run configuration. Physical keys live at top level, sweep axes in
// [axis_x] and [axis_y] sections:
//
//   g = 3.5e-4
//   lam = inf
//   feedback = general
//   metrics = concurrence, chsh
//
//   [axis_x]
//   param = g
//   scale = log
//   min = 1e-5
//   max = 1e-2
//   count = 64

#include <iosfwd>
#include <optional>
#include <string>

#include "qtm/model.hpp"
#include "qtm/sweep.hpp"

namespace qtm {

struct Config {
  SystemParams params;
  Engine engine = Engine::Reduced;
  int qfpme_nodes = 401;
  /// Present when both axis sections are given.
  std::optional<SweepSpec> sweep;
};

/// Throws InvalidArgument on syntax errors, unknown keys, malformed numbers or
/// parameters that fail validation.
Config parse_config(std::istream& in);
Config parse_config_string(const std::string& text);
Config load_config(const std::string& path);

std::string to_string(BathStatistics statistics);
std::string to_string(FeedbackMode mode);

}  // namespace qtm

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtm/metrics.hpp"
#include "qtm/model.hpp"

namespace qtm {

enum class AxisScale { Linear, Log };

enum class Engine { Reduced, Qfpme };

enum class Metric { Concurrence, Chsh, Fidelity, QDot };

/// One sweep axis. A single-point axis (count 1) needs min == max.
struct Axis {
  std::string param;
  AxisScale scale = AxisScale::Linear;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  void validate() const;
  std::vector<double> values() const;
};

struct SweepSpec {
  SystemParams base;
  Axis axis_x;
  Axis axis_y;
  std::vector<Metric> metrics{Metric::Concurrence, Metric::Chsh, Metric::Fidelity, Metric::QDot};
  Engine engine = Engine::Reduced;
  int workers = 1;
  /// Detector grid nodes for the qfpme engine.
  int qfpme_nodes = 401;
  /// Largest axis count accepted for the qfpme engine.
  int qfpme_max_count = 16;

  void validate() const;
};

struct SweepCell {
  double x = 0.0;
  double y = 0.0;
  MetricsRecord metrics;
  /// Empty on success; the metrics are NaN otherwise.
  std::string error;
};

/// Cells in row-major order with x varying fastest.
struct SweepResult {
  SweepSpec spec;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<SweepCell> cells;

  const SweepCell& at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * xs.size() + ix]; }
};

bool is_sweepable(const std::string& name);

/// Sets one numeric field by its config name. Throws InvalidArgument on unknown names.
void set_param(SystemParams& params, const std::string& name, double value);

/// Metrics of a single parameter point under the chosen engine.
MetricsRecord evaluate_point(const SystemParams& params, Engine engine = Engine::Reduced,
                             int qfpme_nodes = 401);

/// Evaluates every grid point. Point failures become NaN cells carrying the
/// error message; invalid specs throw InvalidArgument.
SweepResult run_sweep(const SweepSpec& spec);

/// Header x_value,y_value,concurrence,chsh,fidelity,q_dot_c,error; values with
/// 12 significant digits; metrics not requested are left empty.
void write_csv(std::ostream& os, const SweepResult& result);

std::string to_string(Metric metric);
Metric parse_metric(const std::string& name);
std::string to_string(Engine engine);
Engine parse_engine(const std::string& name);
std::string to_string(AxisScale scale);
AxisScale parse_scale(const std::string& name);

}  // namespace qtm

#include "qtm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "qtm/generators.hpp"
#include "qtm/qfpme.hpp"
#include "qtm/steady.hpp"

namespace qtm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string>& sweepable() {
  static const std::vector<std::string> names{"epsilon", "g",   "u",         "gamma_c", "gamma_h",
                                              "t_c",     "t_h", "gamma_det", "lam"};
  return names;
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out + "\"";
}

MetricsRecord nan_record() {
  MetricsRecord r;
  r.concurrence = r.chsh = r.fidelity = r.singlet_fraction = r.q_dot_c = r.q_dot_h = kNaN;
  r.heat_balanced = false;
  return r;
}

}  // namespace

void Axis::validate() const {
  if (!is_sweepable(param)) throw InvalidArgument("unknown axis parameter '" + param + "'");
  if (!std::isfinite(min) || !std::isfinite(max)) throw InvalidArgument("axis bounds must be finite");
  if (count < 1) throw InvalidArgument("axis count must be >= 1");
  if (count == 1 && min != max) throw InvalidArgument("a single-point axis needs min == max");
  if (count >= 2 && !(min < max)) throw InvalidArgument("axis needs min < max");
  if (scale == AxisScale::Log && !(min > 0.0)) throw InvalidArgument("log axis needs positive bounds");
}

std::vector<double> Axis::values() const {
  validate();
  if (count == 1) return {min};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[i] = scale == AxisScale::Log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                                     : min + t * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void SweepSpec::validate() const {
  axis_x.validate();
  axis_y.validate();
  if (axis_x.param == axis_y.param) throw InvalidArgument("axis parameters must differ");
  if (metrics.empty()) throw InvalidArgument("metric list is empty");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (engine == Engine::Qfpme) {
    if (qfpme_nodes < 3) throw InvalidArgument("qfpme_nodes must be >= 3");
    if (axis_x.count > qfpme_max_count || axis_y.count > qfpme_max_count) {
      throw InvalidArgument("qfpme sweeps are limited to " + std::to_string(qfpme_max_count) +
                            " points per axis");
    }
  }
}

bool is_sweepable(const std::string& name) {
  return std::find(sweepable().begin(), sweepable().end(), name) != sweepable().end();
}

void set_param(SystemParams& p, const std::string& name, double value) {
  if (name == "epsilon") p.epsilon = value;
  else if (name == "g") p.g = value;
  else if (name == "u") p.u = value;
  else if (name == "gamma_c") p.gamma_c = value;
  else if (name == "gamma_h") p.gamma_h = value;
  else if (name == "t_c") p.t_c = value;
  else if (name == "t_h") p.t_h = value;
  else if (name == "gamma_det") p.gamma_det = value;
  else if (name == "lam") p.lam = value;
  else throw InvalidArgument("unknown parameter '" + name + "'");
}

MetricsRecord evaluate_point(const SystemParams& params, Engine engine, int qfpme_nodes) {
  params.validate();
  if (engine == Engine::Reduced) return compute_metrics(steady_state(build_generator(params)), params);

  const DGrid grid = DGrid::for_params(params, qfpme_nodes);
  const JointState js = steady_joint(params, grid);
  const XState sys = marginal_system(js);
  MetricsRecord r = entanglement_metrics(sys);
  r.q_dot_c = heat_current_general(sys, make_rates(params), params).q_dot_c;
  r.q_dot_h = heat_current_hot_resolved(params, js);
  r.heat_balanced = true;
  return r;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  result.xs = spec.axis_x.values();
  result.ys = spec.axis_y.values();
  const std::size_t nx = result.xs.size();
  const std::size_t total = nx * result.ys.size();
  result.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      SweepCell& cell = result.cells[i];
      cell.x = result.xs[i % nx];
      cell.y = result.ys[i / nx];
      SystemParams p = spec.base;
      try {
        set_param(p, spec.axis_x.param, cell.x);
        set_param(p, spec.axis_y.param, cell.y);
        cell.metrics = evaluate_point(p, spec.engine, spec.qfpme_nodes);
      } catch (const std::exception& e) {
        cell.metrics = nan_record();
        cell.error = e.what();
      }
    }
  };
  const int n_threads = static_cast<int>(std::min<std::size_t>(spec.workers, total));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  const auto& m = result.spec.metrics;
  auto wants = [&](Metric x) { return std::find(m.begin(), m.end(), x) != m.end(); };
  const bool c = wants(Metric::Concurrence), b = wants(Metric::Chsh), f = wants(Metric::Fidelity),
             q = wants(Metric::QDot);
  os << "x_value,y_value,concurrence,chsh,fidelity,q_dot_c,error\n";
  for (const SweepCell& cell : result.cells) {
    os << format(cell.x) << ',' << format(cell.y) << ',' << (c ? format(cell.metrics.concurrence) : "") << ','
       << (b ? format(cell.metrics.chsh) : "") << ',' << (f ? format(cell.metrics.fidelity) : "") << ','
       << (q ? format(cell.metrics.q_dot_c) : "") << ',' << (cell.error.empty() ? "" : csv_quote(cell.error))
       << '\n';
  }
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::Concurrence: return "concurrence";
    case Metric::Chsh: return "chsh";
    case Metric::Fidelity: return "fidelity";
    case Metric::QDot: return "q_dot";
  }
  return "?";
}

Metric parse_metric(const std::string& name) {
  if (name == "concurrence") return Metric::Concurrence;
  if (name == "chsh") return Metric::Chsh;
  if (name == "fidelity") return Metric::Fidelity;
  if (name == "q_dot") return Metric::QDot;
  throw InvalidArgument("unknown metric '" + name + "'");
}

std::string to_string(Engine engine) { return engine == Engine::Reduced ? "reduced" : "qfpme"; }

Engine parse_engine(const std::string& name) {
  if (name == "reduced") return Engine::Reduced;
  if (name == "qfpme") return Engine::Qfpme;
  throw InvalidArgument("unknown engine '" + name + "'");
}

std::string to_string(AxisScale scale) { return scale == AxisScale::Log ? "log" : "linear"; }

AxisScale parse_scale(const std::string& name) {
  if (name == "linear") return AxisScale::Linear;
  if (name == "log") return AxisScale::Log;
  throw InvalidArgument("unknown axis scale '" + name + "'");
}

}  // namespace qtm

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qtm/config.hpp"
#include "qtm/generators.hpp"
#include "qtm/qfpme.hpp"
#include "qtm/steady.hpp"
#include "qtm/sweep.hpp"
#include "qtm/validate.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

void print_state(const qtm::XState& s) {
  std::cout << "p00=" << num(s.p00) << "\np01=" << num(s.p01) << "\np10=" << num(s.p10) << "\np11=" << num(s.p11)
            << "\nre_alpha=" << num(s.alpha.real()) << "\nim_alpha=" << num(s.alpha.imag()) << '\n';
}

void print_metrics(const qtm::MetricsRecord& m) {
  std::cout << "concurrence=" << num(m.concurrence) << "\nchsh=" << num(m.chsh) << "\nfidelity=" << num(m.fidelity)
            << "\nsinglet_fraction=" << num(m.singlet_fraction) << "\nq_dot_c=" << num(m.q_dot_c)
            << "\nq_dot_h=" << num(m.q_dot_h) << '\n';
}

int run_steady(const std::string& path) {
  const qtm::Config cfg = qtm::load_config(path);
  const qtm::Generator gen = qtm::build_generator(cfg.params);
  const qtm::XState s = qtm::steady_state(gen);
  std::cout << "generator=" << qtm::to_string(gen.kind) << "\neta="
            << num(qtm::feedback_error(cfg.params.lam, cfg.params.gamma_det).eta) << '\n';
  print_state(s);
  print_metrics(qtm::compute_metrics(s, cfg.params));
  return 0;
}

int run_sweep(const std::string& path, const std::string& out, int workers) {
  const qtm::Config cfg = qtm::load_config(path);
  if (!cfg.sweep) throw qtm::InvalidArgument("config has no [axis_x]/[axis_y] sections");
  qtm::SweepSpec spec = *cfg.sweep;
  if (workers > 0) spec.workers = workers;
  const qtm::SweepResult res = qtm::run_sweep(spec);
  if (out.empty() || out == "-") {
    qtm::write_csv(std::cout, res);
  } else {
    std::ofstream os(out);
    if (!os) throw qtm::InvalidArgument("cannot write '" + out + "'");
    qtm::write_csv(os, res);
  }
  std::size_t failed = 0;
  for (const auto& c : res.cells) failed += !c.error.empty();
  std::cerr << res.cells.size() << " points, " << failed << " failed\n";
  return 0;
}

int run_qfpme(const std::string& path, int nodes, const std::string& dump) {
  const qtm::Config cfg = qtm::load_config(path);
  const qtm::DGrid grid = qtm::DGrid::for_params(cfg.params, nodes > 0 ? nodes : cfg.qfpme_nodes);
  const qtm::JointState js = qtm::steady_joint(cfg.params, grid);
  const qtm::XState s = qtm::marginal_system(js);
  std::cout << "nodes=" << grid.size() << "\nspacing=" << num(grid.spacing()) << '\n';
  print_state(s);
  qtm::MetricsRecord m = qtm::entanglement_metrics(s);
  m.q_dot_c = qtm::heat_current_general(s, qtm::make_rates(cfg.params), cfg.params).q_dot_c;
  m.q_dot_h = qtm::heat_current_hot_resolved(cfg.params, js);
  print_metrics(m);
  if (!dump.empty()) {
    std::ofstream os(dump);
    if (!os) throw qtm::InvalidArgument("cannot write '" + dump + "'");
    qtm::write_joint_csv(os, js);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback-controlled two-qubit thermal machine"};
  app.require_subcommand(1);

  std::string config, out, dump, suite;
  int workers = 0, nodes = 0;
  bool verbose = false;

  auto* steady = app.add_subcommand("steady", "Stationary state and metrics of a single point");
  steady->add_option("config", config, "Config file")->required();

  auto* sweep = app.add_subcommand("sweep", "Two-axis parameter sweep written as CSV");
  sweep->add_option("config", config, "Config file with [axis_x] and [axis_y]")->required();
  sweep->add_option("-o,--output", out, "Output CSV (default: standard output)");
  sweep->add_option("-w,--workers", workers, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);

  auto* qfpme = app.add_subcommand("qfpme", "Single point with the joint system-detector solver");
  qfpme->add_option("config", config, "Config file")->required();
  qfpme->add_option("-n,--nodes", nodes, "Detector grid nodes")->check(CLI::Range(3, 1000000));
  qfpme->add_option("--dump", dump, "Write p(D) and slice populations to this CSV");

  auto* val = app.add_subcommand("validate", "Run an acceptance suite");
  val->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(qtm::validation_suites()));
  val->add_flag("-v,--verbose", verbose, "List every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*steady) return run_steady(config);
    if (*sweep) return run_sweep(config, out, workers);
    if (*qfpme) return run_qfpme(config, nodes, dump);
    const qtm::ValidationReport report = qtm::validate(suite);
    qtm::print_report(std::cout, report, verbose);
    return report.passed() ? 0 : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

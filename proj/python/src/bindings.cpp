#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtm/config.hpp"
#include "qtm/generators.hpp"
#include "qtm/metrics.hpp"
#include "qtm/qfpme.hpp"
#include "qtm/steady.hpp"
#include "qtm/sweep.hpp"
#include "qtm/validate.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_qtm, m) {
  m.doc() = "Feedback-controlled two-qubit quantum thermal machine";

  py::register_exception<qtm::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<qtm::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<qtm::DegenerateKernel>(m, "DegenerateKernel", PyExc_RuntimeError);
  py::register_exception<qtm::NoConvergence>(m, "NoConvergence", PyExc_RuntimeError);

  py::enum_<qtm::BathStatistics>(m, "BathStatistics")
      .value("FERMIONIC", qtm::BathStatistics::Fermionic)
      .value("BOSONIC", qtm::BathStatistics::Bosonic);
  py::enum_<qtm::FeedbackMode>(m, "FeedbackMode")
      .value("OFF", qtm::FeedbackMode::Off)
      .value("GENERAL", qtm::FeedbackMode::General)
      .value("IDEAL", qtm::FeedbackMode::Ideal)
      .value("U_INFINITE", qtm::FeedbackMode::UInfinite);
  py::enum_<qtm::Bath>(m, "Bath").value("COLD", qtm::Bath::Cold).value("HOT", qtm::Bath::Hot);
  py::enum_<qtm::Engine>(m, "Engine").value("REDUCED", qtm::Engine::Reduced).value("QFPME", qtm::Engine::Qfpme);

  py::class_<qtm::SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("epsilon", &qtm::SystemParams::epsilon)
      .def_readwrite("g", &qtm::SystemParams::g)
      .def_property(
          "u", [](const qtm::SystemParams& p) { return p.u.as_double(); },
          [](qtm::SystemParams& p, double v) { p.u = v; })
      .def_readwrite("gamma_c", &qtm::SystemParams::gamma_c)
      .def_readwrite("gamma_h", &qtm::SystemParams::gamma_h)
      .def_readwrite("t_c", &qtm::SystemParams::t_c)
      .def_readwrite("t_h", &qtm::SystemParams::t_h)
      .def_readwrite("gamma_det", &qtm::SystemParams::gamma_det)
      .def_property(
          "lam", [](const qtm::SystemParams& p) { return p.lam.as_double(); },
          [](qtm::SystemParams& p, double v) { p.lam = v; })
      .def_readwrite("statistics", &qtm::SystemParams::statistics)
      .def_readwrite("feedback", &qtm::SystemParams::feedback)
      .def("validate", &qtm::SystemParams::validate);

  py::class_<qtm::RateSet>(m, "RateSet")
      .def("up", &qtm::RateSet::up)
      .def("down", &qtm::RateSet::down)
      .def("max_rate", &qtm::RateSet::max_rate);
  m.def("make_rates", &qtm::make_rates);

  py::class_<qtm::XState>(m, "XState")
      .def(py::init<>())
      .def(py::init([](double p00, double p01, double p10, double p11, std::complex<double> alpha) {
             return qtm::XState{p00, p01, p10, p11, alpha};
           }),
           py::arg("p00"), py::arg("p01"), py::arg("p10"), py::arg("p11"), py::arg("alpha") = 0.0)
      .def_readwrite("p00", &qtm::XState::p00)
      .def_readwrite("p01", &qtm::XState::p01)
      .def_readwrite("p10", &qtm::XState::p10)
      .def_readwrite("p11", &qtm::XState::p11)
      .def_readwrite("alpha", &qtm::XState::alpha)
      .def("trace", &qtm::XState::trace)
      .def("check", &qtm::XState::check, py::arg("tol") = qtm::kPositivityTol)
      .def("to_dense", [](const qtm::XState& s) { return qtm::to_dense(s); })
      .def("__repr__", [](const qtm::XState& s) {
        std::ostringstream os;
        os << "XState(p00=" << s.p00 << ", p01=" << s.p01 << ", p10=" << s.p10 << ", p11=" << s.p11
           << ", alpha=" << s.alpha << ")";
        return os.str();
      });

  py::class_<qtm::Generator>(m, "Generator")
      .def_readonly("matrix", &qtm::Generator::matrix)
      .def_property_readonly("kind", [](const qtm::Generator& g) { return qtm::to_string(g.kind); });
  m.def("build_generator", &qtm::build_generator);
  m.def("build_free", &qtm::build_free);
  m.def("feedback_error", [](double lam, double gamma_det) { return qtm::feedback_error(lam, gamma_det).eta; });

  m.def("steady_state", py::overload_cast<const qtm::Generator&>(&qtm::steady_state));
  m.def("stationary_ideal", &qtm::stationary_ideal);
  m.def("stationary_u_infinite", &qtm::stationary_u_infinite);

  py::class_<qtm::MetricsRecord>(m, "MetricsRecord")
      .def_readonly("concurrence", &qtm::MetricsRecord::concurrence)
      .def_readonly("chsh", &qtm::MetricsRecord::chsh)
      .def_readonly("fidelity", &qtm::MetricsRecord::fidelity)
      .def_readonly("singlet_fraction", &qtm::MetricsRecord::singlet_fraction)
      .def_readonly("q_dot_c", &qtm::MetricsRecord::q_dot_c)
      .def_readonly("q_dot_h", &qtm::MetricsRecord::q_dot_h)
      .def_readonly("heat_balanced", &qtm::MetricsRecord::heat_balanced);
  m.def("concurrence", &qtm::concurrence_x);
  m.def("concurrence_wootters", &qtm::concurrence_wootters);
  m.def("chsh", &qtm::chsh_x);
  m.def("chsh_horodecki", &qtm::chsh_horodecki);
  m.def("teleportation_fidelity", &qtm::teleportation_fidelity);
  m.def("compute_metrics", &qtm::compute_metrics);
  m.def("trace_distance", &qtm::trace_distance);
  m.def("evaluate_point", &qtm::evaluate_point, py::arg("params"), py::arg("engine") = qtm::Engine::Reduced,
        py::arg("qfpme_nodes") = 401);

  m.def(
      "steady_joint",
      [](const qtm::SystemParams& p, int nodes) {
        const qtm::JointState js = qtm::steady_joint(p, qtm::DGrid::for_params(p, nodes));
        return py::make_tuple(js.grid.nodes(), qtm::marginal_detector(js), qtm::marginal_system(js));
      },
      py::arg("params"), py::arg("nodes") = qtm::DGrid::kDefaultNodes,
      "Returns (detector nodes, p(D), system marginal).");

  m.def(
      "sweep_csv",
      [](const std::string& config_text) {
        const qtm::Config cfg = qtm::parse_config_string(config_text);
        if (!cfg.sweep) throw qtm::InvalidArgument("config has no sweep axes");
        std::ostringstream os;
        qtm::write_csv(os, qtm::run_sweep(*cfg.sweep));
        return os.str();
      },
      "Runs the sweep described by an INI config text and returns the CSV.");
  m.def(
      "load_params", [](const std::string& config_text) { return qtm::parse_config_string(config_text).params; });
  m.def("validate", [](const std::string& suite) {
    const qtm::ValidationReport r = qtm::validate(suite);
    std::ostringstream os;
    qtm::print_report(os, r, true);
    return py::make_tuple(r.passed(), os.str());
  });
}

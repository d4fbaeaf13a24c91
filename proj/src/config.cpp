#include "qtm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qtm {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& raw, bool allow_inf = false) {
  const std::string text = trim(raw);
  if (allow_inf && text == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidArgument("key '" + key + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument("key '" + key + "': cannot parse '" + text + "' as an integer");
  }
  return v;
}

BathStatistics parse_statistics(const std::string& s) {
  if (s == "fermion") return BathStatistics::Fermionic;
  if (s == "boson") return BathStatistics::Bosonic;
  throw InvalidArgument("statistics must be fermion or boson, got '" + s + "'");
}

FeedbackMode parse_feedback(const std::string& s) {
  if (s == "off") return FeedbackMode::Off;
  if (s == "general") return FeedbackMode::General;
  if (s == "ideal") return FeedbackMode::Ideal;
  if (s == "u_inf") return FeedbackMode::UInfinite;
  throw InvalidArgument("feedback must be off, general, ideal or u_inf, got '" + s + "'");
}

std::vector<Metric> parse_metrics(const std::string& s) {
  std::vector<Metric> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_metric(item));
  }
  if (out.empty()) throw InvalidArgument("metrics list is empty");
  return out;
}

Axis parse_axis(const std::string& section, const pt::ptree& tree) {
  static const std::set<std::string> keys{"param", "scale", "min", "max", "count"};
  Axis axis;
  std::set<std::string> seen;
  for (const auto& [key, node] : tree) {
    if (!keys.count(key)) throw InvalidArgument("unknown key '" + key + "' in [" + section + "]");
    seen.insert(key);
    const std::string value = trim(node.data());
    if (key == "param") axis.param = value;
    else if (key == "scale") axis.scale = parse_scale(value);
    else if (key == "min") axis.min = parse_number(key, value);
    else if (key == "max") axis.max = parse_number(key, value);
    else axis.count = parse_int(key, value);
  }
  for (const char* required : {"param", "min", "max", "count"}) {
    if (!seen.count(required)) throw InvalidArgument("[" + section + "] is missing '" + required + "'");
  }
  axis.validate();
  return axis;
}

}  // namespace

Config parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(std::string("config syntax error: ") + e.what());
  }

  Config cfg;
  SweepSpec sweep;
  std::optional<Axis> ax, ay;
  int workers = 1;
  int qfpme_max_count = 16;
  std::vector<Metric> metrics = sweep.metrics;

  for (const auto& [key, node] : tree) {
    if (!node.empty()) {
      if (key == "axis_x") ax = parse_axis(key, node);
      else if (key == "axis_y") ay = parse_axis(key, node);
      else throw InvalidArgument("unknown section [" + key + "]");
      continue;
    }
    const std::string value = trim(node.data());
    if (key == "u" || key == "lam") set_param(cfg.params, key, parse_number(key, value, true));
    else if (is_sweepable(key)) set_param(cfg.params, key, parse_number(key, value));
    else if (key == "statistics") cfg.params.statistics = parse_statistics(value);
    else if (key == "feedback") cfg.params.feedback = parse_feedback(value);
    else if (key == "metrics") metrics = parse_metrics(value);
    else if (key == "engine") cfg.engine = parse_engine(value);
    else if (key == "workers") workers = parse_int(key, value);
    else if (key == "qfpme_nodes") cfg.qfpme_nodes = parse_int(key, value);
    else if (key == "qfpme_max_count") qfpme_max_count = parse_int(key, value);
    else throw InvalidArgument("unknown key '" + key + "'");
  }

  if (ax.has_value() != ay.has_value()) throw InvalidArgument("a sweep needs both [axis_x] and [axis_y]");
  if (ax) {
    sweep.base = cfg.params;
    sweep.axis_x = *ax;
    sweep.axis_y = *ay;
    sweep.metrics = metrics;
    sweep.engine = cfg.engine;
    sweep.workers = workers;
    sweep.qfpme_nodes = cfg.qfpme_nodes;
    sweep.qfpme_max_count = qfpme_max_count;
    sweep.validate();
    cfg.sweep = sweep;
  } else {
    cfg.params.validate();
  }
  return cfg;
}

Config parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string to_string(BathStatistics statistics) {
  return statistics == BathStatistics::Fermionic ? "fermion" : "boson";
}

std::string to_string(FeedbackMode mode) {
  switch (mode) {
    case FeedbackMode::Off: return "off";
    case FeedbackMode::General: return "general";
    case FeedbackMode::Ideal: return "ideal";
    case FeedbackMode::UInfinite: return "u_inf";
  }
  return "?";
}

}  // namespace qtm

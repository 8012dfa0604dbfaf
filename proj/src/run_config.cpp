#include "qsteer/run_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qsteer {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v) {
  std::size_t used = 0;
  const double d = std::stod(v, &used);
  if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument("not a number: " + v);
  return d;
}

long long to_int(const std::string& v) {
  std::size_t used = 0;
  const long long i = std::stoll(v, &used);
  if (used != v.size()) throw std::invalid_argument("not an integer: " + v);
  return i;
}

std::uint64_t to_u64(const std::string& v) {
  if (!v.empty() && v[0] == '-') throw std::invalid_argument("must be nonnegative: " + v);
  std::size_t used = 0;
  const unsigned long long i = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument("not an integer: " + v);
  return i;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

std::vector<double> to_doubles(const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(item));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"label", [](RunConfig& c, const std::string& v) { c.label = v; }},
      {"n_qubits", [](RunConfig& c, const std::string& v) { c.protocol.n_qubits = static_cast<int>(to_int(v)); }},
      {"target", [](RunConfig& c, const std::string& v) { c.protocol.target = parse_target(v); }},
      {"initial", [](RunConfig& c, const std::string& v) { c.protocol.initial = parse_target(v); }},
      {"dt", [](RunConfig& c, const std::string& v) { c.protocol.dt = to_double(v); }},
      {"couplings", [](RunConfig& c, const std::string& v) { c.protocol.couplings = to_doubles(v); }},
      {"weights", [](RunConfig& c, const std::string& v) { c.protocol.weights.p = to_doubles(v); }},
      {"f_star", [](RunConfig& c, const std::string& v) { c.protocol.f_star = to_double(v); }},
      {"max_steps", [](RunConfig& c, const std::string& v) { c.protocol.max_steps = static_cast<int>(to_int(v)); }},
      {"scheduler",
       [](RunConfig& c, const std::string& v) {
         if (v == "alternating") c.protocol.scheduler = Scheduler::Alternating;
         else if (v == "random") c.protocol.scheduler = Scheduler::Random;
         else throw std::invalid_argument("scheduler must be alternating or random");
       }},
      {"steering_set",
       [](RunConfig& c, const std::string& v) {
         if (v == "full12") c.protocol.steering_set = SteeringSet::Full12;
         else if (v == "no_beta_y") c.protocol.steering_set = SteeringSet::NoBetaY;
         else throw std::invalid_argument("steering_set must be full12 or no_beta_y");
       }},
      {"seed", [](RunConfig& c, const std::string& v) { c.protocol.seed = to_u64(v); }},
      {"trajectories", [](RunConfig& c, const std::string& v) { c.trajectories = to_u64(v); }},
      {"bin_width", [](RunConfig& c, const std::string& v) { c.bin_width = static_cast<int>(to_int(v)); }},
      {"curve_horizon", [](RunConfig& c, const std::string& v) { c.curve_horizon = static_cast<int>(to_int(v)); }},
      {"record_level",
       [](RunConfig& c, const std::string& v) {
         if (v == "summary") c.protocol.record_level = RecordLevel::Summary;
         else if (v == "metrics") c.protocol.record_level = RecordLevel::Metrics;
         else if (v == "full") c.protocol.record_level = RecordLevel::Full;
         else throw std::invalid_argument("record_level must be summary, metrics or full");
       }},
      {"write_records", [](RunConfig& c, const std::string& v) { c.write_records = to_bool(v); }},
      {"entropy_subset",
       [](RunConfig& c, const std::string& v) {
         c.protocol.entropy_subset.clear();
         for (double d : to_doubles(v)) c.protocol.entropy_subset.push_back(static_cast<int>(d));
       }},
      {"tie_tolerance", [](RunConfig& c, const std::string& v) { c.protocol.tie_tolerance = to_double(v); }},
      {"sweep_axis", [](RunConfig& c, const std::string& v) { c.sweep_axis = v; }},
      {"sweep_values", [](RunConfig& c, const std::string& v) { c.sweep_values = to_doubles(v); }},
  };
  return table;
}

}  // namespace

int default_bin_width(const TargetStateSpec& target, int n) {
  if (n <= 2) return 1;
  if (n == 3) return 25;
  if (n == 4) return std::holds_alternative<WSpec>(target) ? 200 : 100;
  return 100;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (seen.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    seen[key] = lineno;
    try {
      it->second(cfg, value);
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + key + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_run_config(in);
}

RunConfig resolve_run_config(RunConfig cfg) {
  try {
    cfg.protocol = resolve_params(cfg.protocol);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.trajectories < 1) throw ConfigError("trajectories must be at least 1");
  if (cfg.bin_width == 0) cfg.bin_width = default_bin_width(cfg.protocol.target, cfg.protocol.n_qubits);
  if (cfg.bin_width < 1) throw ConfigError("bin_width must be at least 1");
  if (cfg.curve_horizon < 0) throw ConfigError("curve_horizon must be nonnegative");
  if (cfg.protocol.record_level != RecordLevel::Summary) cfg.protocol.series_limit = cfg.curve_horizon;
  if (!cfg.sweep_axis.empty()) {
    static const std::vector<std::string> axes{"f_star", "dt", "p1", "n_qubits"};
    if (std::find(axes.begin(), axes.end(), cfg.sweep_axis) == axes.end())
      throw ConfigError("sweep_axis must be one of f_star, dt, p1, n_qubits");
  }
  return cfg;
}

std::vector<std::string> config_warnings(const RunConfig& cfg) {
  std::vector<std::string> out;
  const auto& p = cfg.protocol;
  for (std::size_t q = 0; q < p.couplings.size(); ++q) {
    const double jdt = p.couplings[q] * p.dt;
    if (jdt > 0.5) {
      std::ostringstream os;
      os << "qubit " << q + 1 << ": J*dt = " << jdt << " exceeds 0.5; first-order weak-measurement dynamics is unreliable";
      out.push_back(os.str());
    }
  }
  return out;
}

std::string to_string(Scheduler s) { return s == Scheduler::Alternating ? "alternating" : "random"; }
std::string to_string(SteeringSet s) { return s == SteeringSet::Full12 ? "full12" : "no_beta_y"; }
std::string to_string(RecordLevel r) {
  switch (r) {
    case RecordLevel::Summary: return "summary";
    case RecordLevel::Metrics: return "metrics";
    default: return "full";
  }
}

}  // namespace qsteer

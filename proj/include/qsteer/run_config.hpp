#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsteer/protocol_engine.hpp"

namespace qsteer {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string label = "run";
  ProtocolParams protocol;
  std::uint64_t trajectories = 1000;
  int bin_width = 0;       // 0: default_bin_width
  int curve_horizon = 100; // cycles covered by curves.csv
  bool write_records = false;
  std::string sweep_axis;  // f_star | dt | p1 | n_qubits
  std::vector<double> sweep_values;
};

int default_bin_width(const TargetStateSpec& target, int n_qubits);

// Flat "key = value" text; '#' starts a comment. Throws ConfigError with the line number.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

// Fills defaults and validates the whole configuration; throws ConfigError.
RunConfig resolve_run_config(RunConfig cfg);

// Human-readable warnings, e.g. couplings outside the weak-measurement regime.
std::vector<std::string> config_warnings(const RunConfig& cfg);

std::string to_string(Scheduler s);
std::string to_string(SteeringSet s);
std::string to_string(RecordLevel r);

}  // namespace qsteer

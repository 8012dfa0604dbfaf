#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsteer/run_config.hpp"
#include "qsteer/trajectory_stats.hpp"

namespace qsteer {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 1;
  bool dry_run = false;
  std::optional<std::uint64_t> seed;
};

struct RunOutputs {
  ConvergenceHistogram histogram;
  Summary summary;
  std::vector<CurvePoint> curves;  // empty at record_level summary
  double wall_seconds = 0.0;
};

// Runs the ensemble and streams per-trajectory rows to `records` when non-null.
RunOutputs execute_run(const RunConfig& cfg, int threads, std::ostream* records = nullptr, std::ostream* steps = nullptr);

std::string summary_json(const RunConfig& cfg, const RunOutputs& out);
void write_histogram_csv(std::ostream& os, const ConvergenceHistogram& h);
void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& curves, int n_qubits);

struct SweepRow {
  double value = 0.0;
  Summary summary;
};

// One full run per value of cfg.sweep_axis.
std::vector<SweepRow> execute_sweep(const RunConfig& cfg, int threads);
void write_sweep_csv(std::ostream& os, const std::string& axis, const std::vector<SweepRow>& rows);

// Applies one sweep value; throws ConfigError for values the axis cannot take.
RunConfig apply_sweep_value(const RunConfig& cfg, const std::string& axis, double value);

// Exit codes: 0 ok, 2 configuration error, 3 runtime failure.
int cmd_run(RunConfig cfg, const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(RunConfig cfg, const RunOptions& opt, std::ostream& out, std::ostream& err);

std::string format_number(double x);

}  // namespace qsteer

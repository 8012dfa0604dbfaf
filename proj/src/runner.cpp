#include "qsteer/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qsteer/ensemble.hpp"

namespace qsteer {

namespace {

using json = nlohmann::ordered_json;

void write_record_row(std::ostream& os, const TrajectoryRecord& r) {
  os << r.index << ',' << (r.converged ? 1 : 0) << ',' << r.n_steps << ',' << r.trapped_cycles << ','
     << format_number(r.final_metrics.fidelity) << ',' << format_number(r.final_metrics.total_cost) << ','
     << format_number(r.final_metrics.entropy) << '\n';
}

void write_step_rows(std::ostream& os, const TrajectoryRecord& r) {
  for (const auto& c : r.cycles)
    for (const auto& a : c.actions)
      os << r.index << ',' << c.cycle << ',' << a.pair.first << ',' << a.pair.second << ',' << a.k_n.to_string() << ','
         << a.k_m.to_string() << ',' << a.outcome.xi << ',' << a.outcome.eta << ',' << format_number(a.expected_dc)
         << ',' << (c.trapped ? 1 : 0) << '\n';
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

void print_warnings(const RunConfig& cfg, std::ostream& err) {
  for (const auto& w : config_warnings(cfg)) err << "warning: " << w << '\n';
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

RunOutputs execute_run(const RunConfig& cfg, int threads, std::ostream* records, std::ostream* steps) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& p = cfg.protocol;
  std::vector<int> converged_steps;
  const bool curves = p.record_level != RecordLevel::Summary;
  std::optional<CurveAccumulator> acc;
  if (curves) acc.emplace(p.n_qubits, cfg.curve_horizon);
  if (records) *records << "index,converged,n_steps,trapped_cycles,final_fidelity,final_total_cost,final_entropy\n";
  if (steps) *steps << "index,cycle,n,m,k_n,k_m,xi,eta,expected_dc,trapped\n";
  for_each_trajectory(p, cfg.trajectories, threads, [&](TrajectoryRecord&& r) {
    if (r.converged) converged_steps.push_back(r.n_steps);
    if (acc) acc->add(r);
    if (records) write_record_row(*records, r);
    if (steps) write_step_rows(*steps, r);
  });
  RunOutputs out;
  out.histogram = histogram_from_steps(converged_steps, cfg.trajectories, cfg.bin_width);
  if (converged_steps.empty()) {
    out.summary.total = cfg.trajectories;
    out.summary.bin_width = cfg.bin_width;
  } else {
    out.summary = summarize_steps(converged_steps, cfg.trajectories, cfg.bin_width);
  }
  if (acc) out.curves = acc->finish();
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string summary_json(const RunConfig& cfg, const RunOutputs& out) {
  const auto& p = cfg.protocol;
  json j;
  j["label"] = cfg.label;
  j["n_qubits"] = p.n_qubits;
  j["target"] = describe_target(p.target);
  j["initial"] = describe_target(p.initial);
  j["dt"] = p.dt;
  j["couplings"] = p.couplings;
  j["weights"] = p.weights.p;
  j["f_star"] = p.f_star;
  j["max_steps"] = p.max_steps;
  j["scheduler"] = to_string(p.scheduler);
  j["steering_set"] = to_string(p.steering_set);
  j["seed"] = p.seed;
  j["trajectories"] = cfg.trajectories;
  j["bin_width"] = out.summary.bin_width;
  j["mode_steps"] = out.summary.mode;
  j["median_steps"] = out.summary.median;
  j["half_width"] = out.summary.half_width;
  j["converged"] = out.summary.converged;
  j["converged_fraction"] = out.summary.converged_fraction;
  return j.dump(2) + "\n";
}

void write_histogram_csv(std::ostream& os, const ConvergenceHistogram& h) {
  os << "bin_start,bin_end,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const auto lo = static_cast<long long>(k) * h.bin_width;
    os << lo << ',' << lo + h.bin_width - 1 << ',' << h.counts[k] << '\n';
  }
}

void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& curves, int n_qubits) {
  os << "cycle,mean_F2,se_F2,mean_C_total,se_C_total";
  for (int r = 1; r <= n_qubits; ++r) os << ",mean_C_" << r;
  os << ",mean_S,se_S\n";
  for (const auto& c : curves) {
    os << c.cycle << ',' << format_number(c.mean_f2) << ',' << format_number(c.se_f2) << ',' << format_number(c.mean_c)
       << ',' << format_number(c.se_c);
    for (double v : c.mean_cr) os << ',' << format_number(v);
    os << ',' << format_number(c.mean_s) << ',' << format_number(c.se_s) << '\n';
  }
}

RunConfig apply_sweep_value(const RunConfig& base, const std::string& axis, double v) {
  RunConfig c = base;
  if (axis == "f_star") {
    c.protocol.f_star = v;
  } else if (axis == "dt") {
    c.protocol.dt = v;
  } else if (axis == "p1") {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("p1 must lie in [0, 1]");
    const int n = c.protocol.n_qubits;
    // remaining weight keeps the default proportions of p_2..p_N
    const auto def = default_weights(n).p;
    double rest = 0.0;
    for (int r = 1; r < n; ++r) rest += def[static_cast<std::size_t>(r)];
    std::vector<double> w(static_cast<std::size_t>(n));
    w[0] = v;
    for (int r = 1; r < n; ++r) w[static_cast<std::size_t>(r)] = (1.0 - v) * def[static_cast<std::size_t>(r)] / rest;
    c.protocol.weights.p = w;
  } else if (axis == "n_qubits") {
    if (v != std::floor(v)) throw ConfigError("n_qubits sweep values must be integers");
    c.protocol.n_qubits = static_cast<int>(v);
    c.protocol.couplings.clear();
    c.protocol.weights.p.clear();
    c.protocol.max_steps = 0;
    c.protocol.entropy_subset.clear();
    c.bin_width = 0;
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
  return resolve_run_config(c);
}

std::vector<SweepRow> execute_sweep(const RunConfig& cfg, int threads) {
  if (cfg.sweep_axis.empty() || cfg.sweep_values.empty()) throw ConfigError("sweep needs sweep_axis and sweep_values");
  std::vector<RunConfig> runs;
  for (double v : cfg.sweep_values) {
    RunConfig c = apply_sweep_value(cfg, cfg.sweep_axis, v);
    c.protocol.record_level = RecordLevel::Summary;
    runs.push_back(c);
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < runs.size(); ++i) rows.push_back({cfg.sweep_values[i], execute_run(runs[i], threads).summary});
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::string& axis, const std::vector<SweepRow>& rows) {
  os << axis << ",mode_steps,median_steps,half_width,converged,trajectories,converged_fraction\n";
  for (const auto& r : rows)
    os << format_number(r.value) << ',' << format_number(r.summary.mode) << ',' << format_number(r.summary.median) << ','
       << format_number(r.summary.half_width) << ',' << r.summary.converged << ',' << r.summary.total << ','
       << format_number(r.summary.converged_fraction) << '\n';
}

int cmd_run(RunConfig cfg, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.seed) cfg.protocol.seed = *opt.seed;
    cfg = resolve_run_config(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  print_warnings(cfg, err);
  if (opt.dry_run) {
    out << summary_json(cfg, RunOutputs{});
    return 0;
  }
  try {
    std::filesystem::create_directories(opt.out_dir);
    std::optional<std::ofstream> rec, steps;
    if (cfg.write_records) rec.emplace(open_out(opt.out_dir / "records.csv"));
    if (cfg.write_records && cfg.protocol.record_level == RecordLevel::Full) steps.emplace(open_out(opt.out_dir / "steps.csv"));
    const RunOutputs res = execute_run(cfg, opt.threads, rec ? &*rec : nullptr, steps ? &*steps : nullptr);
    open_out(opt.out_dir / "summary.json") << summary_json(cfg, res);
    auto h = open_out(opt.out_dir / "histogram.csv");
    write_histogram_csv(h, res.histogram);
    if (!res.curves.empty()) {
      auto c = open_out(opt.out_dir / "curves.csv");
      write_curves_csv(c, res.curves, cfg.protocol.n_qubits);
    }
    out << cfg.label << ": mode " << format_number(res.summary.mode) << ", median " << format_number(res.summary.median)
        << ", half-width " << format_number(res.summary.half_width) << ", converged " << res.summary.converged << '/'
        << res.summary.total << ", wall " << format_number(res.wall_seconds) << " s\n";
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

int cmd_sweep(RunConfig cfg, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<RunConfig> checked;
  try {
    if (opt.seed) cfg.protocol.seed = *opt.seed;
    cfg = resolve_run_config(cfg);
    if (cfg.sweep_axis.empty() || cfg.sweep_values.empty()) throw ConfigError("sweep needs sweep_axis and sweep_values");
    for (double v : cfg.sweep_values) checked.push_back(apply_sweep_value(cfg, cfg.sweep_axis, v));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  for (const auto& c : checked) print_warnings(c, err);
  if (opt.dry_run) {
    out << "sweep over " << cfg.sweep_axis << ": " << checked.size() << " runs\n";
    return 0;
  }
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = execute_sweep(cfg, opt.threads);
    std::filesystem::create_directories(opt.out_dir);
    auto os = open_out(opt.out_dir / "sweep.csv");
    write_sweep_csv(os, cfg.sweep_axis, rows);
    out << cfg.label << ": " << rows.size() << " sweep points, wall "
        << format_number(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) << " s\n";
  } catch (const std::exception& e) {
    err << "sweep failed: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace qsteer

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qsteer/runner.hpp"
#include "qsteer/validation.hpp"

using namespace qsteer;
namespace fs = std::filesystem;

namespace {
RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}
fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("qsteer_test_" + name);
  fs::remove_all(p);
  return p;
}
const char* kSmall =
    "label = small\nn_qubits = 2\ntarget = bell\nweights = 0.9, 0.1\nseed = 5\ntrajectories = 60\ncurve_horizon = 20\n";
}  // namespace

TEST(Config, ParsesKeys) {
  const auto c = parse(
      "# comment\nn_qubits = 3\ntarget = w\ndt = 0.1\nweights = 0.9, 0.09, 0.01  # trailing\nsteering_set = full12\n"
      "scheduler = random\nseed = 42\ntrajectories = 10\nrecord_level = full\nentropy_subset = 1\n");
  EXPECT_EQ(c.protocol.n_qubits, 3);
  EXPECT_TRUE(std::holds_alternative<WSpec>(c.protocol.target));
  EXPECT_DOUBLE_EQ(c.protocol.dt, 0.1);
  EXPECT_EQ(c.protocol.weights.p.size(), 3u);
  EXPECT_EQ(c.protocol.steering_set, SteeringSet::Full12);
  EXPECT_EQ(c.protocol.scheduler, Scheduler::Random);
  EXPECT_EQ(c.protocol.seed, 42u);
  EXPECT_EQ(c.protocol.record_level, RecordLevel::Full);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse("bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse("dt = abc\n"), ConfigError);
  EXPECT_THROW(parse("dt = 0.1\ndt = 0.2\n"), ConfigError);
  EXPECT_THROW(parse("no equals sign\n"), ConfigError);
  EXPECT_THROW(resolve_run_config(parse("n_qubits = 3\ntarget = bell\n")), ConfigError);
  EXPECT_THROW(resolve_run_config(parse("weights = 0.5, 0.6\n")), ConfigError);
}

TEST(Config, DefaultBinWidths) {
  EXPECT_EQ(resolve_run_config(parse("")).bin_width, 1);
  EXPECT_EQ(resolve_run_config(parse("n_qubits = 3\ntarget = ghz\n")).bin_width, 25);
  EXPECT_EQ(resolve_run_config(parse("n_qubits = 4\ntarget = w\n")).bin_width, 200);
  EXPECT_EQ(resolve_run_config(parse("n_qubits = 5\ntarget = ghz\n")).bin_width, 100);
}

TEST(Config, WeakLimitWarning) {
  EXPECT_TRUE(config_warnings(resolve_run_config(parse("dt = 0.2\n"))).empty());
  EXPECT_EQ(config_warnings(resolve_run_config(parse("dt = 0.8\n"))).size(), 2u);
}

TEST(Config, BundledConfigsResolve) {
  for (const auto& e : fs::directory_iterator(QSTEER_SOURCE_DIR "/configs")) {
    SCOPED_TRACE(e.path().string());
    EXPECT_NO_THROW(resolve_run_config(load_run_config(e.path())));
  }
}

TEST(CmdRun, WritesOutputs) {
  const auto dir = scratch("run");
  std::ostringstream out, err;
  RunOptions opt;
  opt.out_dir = dir;
  auto cfg = parse(std::string(kSmall) + "write_records = true\nrecord_level = full\n");
  ASSERT_EQ(cmd_run(cfg, opt, out, err), 0) << err.str();
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_EQ(summary["trajectories"], 60);
  EXPECT_TRUE(summary.contains("mode_steps"));
  EXPECT_TRUE(summary.contains("median_steps"));
  EXPECT_TRUE(summary.contains("half_width"));
  EXPECT_TRUE(summary.contains("converged_fraction"));
  EXPECT_EQ(slurp(dir / "histogram.csv").substr(0, 24), "bin_start,bin_end,count\n");
  EXPECT_EQ(slurp(dir / "curves.csv").substr(0, 73),
            "cycle,mean_F2,se_F2,mean_C_total,se_C_total,mean_C_1,mean_C_2,mean_S,se_S");
  EXPECT_TRUE(fs::exists(dir / "records.csv"));
  EXPECT_TRUE(fs::exists(dir / "steps.csv"));
  EXPECT_NE(out.str().find("wall"), std::string::npos);
}

TEST(CmdRun, ByteIdenticalAcrossThreads) {
  std::string first;
  for (int threads : {1, 4}) {
    const auto dir = scratch("det" + std::to_string(threads));
    std::ostringstream out, err;
    RunOptions opt;
    opt.out_dir = dir;
    opt.threads = threads;
    ASSERT_EQ(cmd_run(parse(std::string(kSmall) + "write_records = true\n"), opt, out, err), 0);
    std::string all;
    for (const char* f : {"summary.json", "histogram.csv", "curves.csv", "records.csv"}) all += slurp(dir / f);
    if (first.empty()) first = all;
    else EXPECT_EQ(all, first);
  }
}

TEST(CmdRun, ExitCodes) {
  std::ostringstream out, err;
  RunOptions opt;
  opt.out_dir = scratch("codes");
  EXPECT_EQ(cmd_run(parse("n_qubits = 3\ntarget = bell\n"), opt, out, err), 2);
  opt.dry_run = true;
  EXPECT_EQ(cmd_run(parse(kSmall), opt, out, err), 0);
  EXPECT_FALSE(fs::exists(opt.out_dir / "summary.json"));
}

TEST(CmdSweep, SinglePointEqualsRun) {
  const auto cfg = parse(std::string(kSmall) + "sweep_axis = f_star\nsweep_values = 0.99\n");
  const auto rows = execute_sweep(resolve_run_config(cfg), 1);
  ASSERT_EQ(rows.size(), 1u);
  const auto run = execute_run(resolve_run_config(cfg), 1);
  EXPECT_EQ(rows[0].summary.mode, run.summary.mode);
  EXPECT_EQ(rows[0].summary.median, run.summary.median);
  EXPECT_EQ(rows[0].summary.converged, run.summary.converged);
}

TEST(CmdSweep, AxesAndErrors) {
  const auto base = resolve_run_config(parse(kSmall));
  EXPECT_EQ(apply_sweep_value(base, "p1", 0.5).protocol.weights.p, (std::vector<double>{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(apply_sweep_value(base, "dt", 0.1).protocol.dt, 0.1);
  EXPECT_THROW(apply_sweep_value(base, "n_qubits", 3), ConfigError);  // Bell needs N = 2
  EXPECT_THROW(apply_sweep_value(base, "p1", 1.5), ConfigError);
  std::ostringstream out, err;
  RunOptions opt;
  opt.out_dir = scratch("sweep");
  EXPECT_EQ(cmd_sweep(parse(kSmall), opt, out, err), 2);  // no axis
  EXPECT_EQ(cmd_sweep(parse(std::string(kSmall) + "sweep_axis = dt\nsweep_values = 0.2, 0.1\n"), opt, out, err), 0);
  EXPECT_TRUE(fs::exists(opt.out_dir / "sweep.csv"));
}

TEST(Format, Numbers) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
}

TEST(Validate, AllPropertiesPass) {
  std::ostringstream out;
  EXPECT_EQ(cmd_validate({}, out), 0) << out.str();
}

TEST(Validate, LambSignMutationIsCaught) {
  ValidationOptions opt;
  opt.inject_lamb_sign_error = true;
  std::ostringstream out;
  EXPECT_NE(cmd_validate(opt, out), 0);
  EXPECT_NE(out.str().find("FAIL oracle_conditioned_state_order_fixed_rate"), std::string::npos) << out.str();
}

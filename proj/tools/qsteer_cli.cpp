#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "qsteer/ensemble.hpp"
#include "qsteer/runner.hpp"
#include "qsteer/validation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qsteer: active-feedback state steering simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
  std::optional<std::uint64_t> seed;
  bool dry_run = false;
  bool inject_lamb = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
    if (needs_config) c->required();
    sub->add_option("--seed", seed, "override the configured seed");
    sub->add_option("--threads", threads, "worker threads (default: QSTEER_THREADS or OpenMP default)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--dry-run", dry_run, "validate the configuration without running");
  };
  auto* run = app.add_subcommand("run", "run one ensemble");
  add_common(run, true);
  auto* sweep = app.add_subcommand("sweep", "run one ensemble per sweep value");
  add_common(sweep, true);
  auto* validate = app.add_subcommand("validate", "run the oracle and invariant checks");
  add_common(validate, false);
  validate->add_flag("--inject-lamb-sign-error", inject_lamb)->group("");

  CLI11_PARSE(app, argc, argv);

  qsteer::RunOptions opt;
  opt.out_dir = out_dir;
  opt.threads = threads > 0 ? threads : qsteer::default_thread_count();
  opt.dry_run = dry_run;
  opt.seed = seed;

  if (validate->parsed()) {
    if (!config_path.empty()) {
      try {
        auto cfg = qsteer::resolve_run_config(qsteer::load_run_config(config_path));
        for (const auto& w : qsteer::config_warnings(cfg)) std::cerr << "warning: " << w << '\n';
        std::cout << "config ok: " << config_path << '\n';
      } catch (const qsteer::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
      }
      if (dry_run) return 0;
    }
    qsteer::ValidationOptions vo;
    if (seed) vo.seed = *seed;
    vo.inject_lamb_sign_error = inject_lamb;
    return qsteer::cmd_validate(vo, std::cout);
  }

  qsteer::RunConfig cfg;
  try {
    cfg = qsteer::load_run_config(config_path);
  } catch (const qsteer::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (run->parsed()) return qsteer::cmd_run(cfg, opt, std::cout, std::cerr);
  return qsteer::cmd_sweep(cfg, opt, std::cout, std::cerr);
}

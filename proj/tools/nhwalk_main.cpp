// nhwalk — leaky-coin quantum walk experiments.
//
// Builds a RunConfig from an optional flat key=value config file plus
// command-line flags (flags win), runs the requested experiment and writes
// CSV or JSON. Exit codes: 0 success, 1 configuration error, 2 run error.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nhwalk/experiments.hpp"
#include "nhwalk/version.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string experiment;
  std::string out;
  std::string format;
  std::string shift;
  std::string initial;
  std::string sweep1, sweep2;
  double alpha = 0, alpha1 = 0, alpha2 = 0, lambda = 0, tau = 0, V = 0;
  int steps = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("nhwalk ") + nhwalk::kVersion +
               " — quantum walks with amplitude-leaking coin operations"};
  app.footer(
      "Experiments: fig1 fig2 fig3 fig4 fig5 table1 fig6 custom.\n"
      "Sweeps are name:start:stop:count, e.g. --sweep1 lambda:0:4:41.\n"
      "NHWALK_THREADS caps the number of worker threads.");

  Flags f;
  app.add_option("--config", f.config_path, "flat key = value config file; flags override it");
  auto* opt_experiment = app.add_option("--experiment", f.experiment, "which experiment to run");
  auto* opt_out = app.add_option("--out", f.out, "output file path");
  auto* opt_format = app.add_option("--format", f.format, "csv or json (default csv)");
  auto* opt_steps = app.add_option("--steps", f.steps, "number of walk steps");
  auto* opt_alpha = app.add_option("--alpha", f.alpha, "Hermitian coin parameter in [0,1]");
  auto* opt_alpha1 = app.add_option("--alpha1", f.alpha1, "non-Hermitian coin coefficient");
  auto* opt_alpha2 = app.add_option("--alpha2", f.alpha2, "non-Hermitian coin coefficient");
  auto* opt_lambda = app.add_option("--lambda", f.lambda, "dimer coin leak rate");
  auto* opt_tau = app.add_option("--tau", f.tau, "dimer coin waiting interval");
  auto* opt_v = app.add_option("--V", f.V, "dimer tunneling energy (default 1)");
  auto* opt_shift = app.add_option("--shift", f.shift, "conditional or generalized (default)");
  auto* opt_initial = app.add_option("--initial", f.initial, "localized (default) or symmetric");
  auto* opt_sweep1 = app.add_option("--sweep1", f.sweep1, "first sweep axis, name:start:stop:count");
  auto* opt_sweep2 = app.add_option("--sweep2", f.sweep2, "second sweep axis, name:start:stop:count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  nhwalk::RunConfig cfg;
  try {
    if (!f.config_path.empty()) nhwalk::apply_config_file(cfg, f.config_path);

    auto flag = [&](const CLI::Option* opt, const char* key, const std::string& value) {
      if (opt->count() > 0) nhwalk::apply_setting(cfg, key, value, std::string("--") + key);
    };
    flag(opt_experiment, "experiment", f.experiment);
    flag(opt_out, "out", f.out);
    flag(opt_format, "format", f.format);
    flag(opt_shift, "shift", f.shift);
    flag(opt_initial, "initial", f.initial);
    flag(opt_sweep1, "sweep1", f.sweep1);
    flag(opt_sweep2, "sweep2", f.sweep2);
    if (opt_steps->count()) cfg.steps = f.steps;
    if (opt_alpha->count()) cfg.alpha = f.alpha;
    if (opt_alpha1->count()) cfg.alpha1 = f.alpha1;
    if (opt_alpha2->count()) cfg.alpha2 = f.alpha2;
    if (opt_lambda->count()) cfg.lambda = f.lambda;
    if (opt_tau->count()) cfg.tau = f.tau;
    if (opt_v->count()) cfg.V = f.V;

    if (cfg.out_path.empty()) throw nhwalk::config_error("no output path (set --out or out= in the config)");
  } catch (const nhwalk::config_error& e) {
    std::cerr << "nhwalk: config error: " << e.what() << "\n";
    return 1;
  }

  try {
    const nhwalk::SweepResult result = nhwalk::run_experiment(cfg);
    nhwalk::emit(result, cfg.out_path, cfg.format);
  } catch (const nhwalk::config_error& e) {
    std::cerr << "nhwalk: config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "nhwalk: run error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

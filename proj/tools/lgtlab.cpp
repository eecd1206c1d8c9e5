// lgtlab <scenario> [--config file.json] [--out dir] [--threads n] [--tolerance x]
// lgtlab verify --all

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lgtlab/kernels.hpp"
#include "lgtlab/runner.hpp"

namespace {

struct Options {
  std::string config;
  std::string out = "lgtlab_out";
  std::optional<int> threads;
  std::optional<double> tolerance;
  bool all = false;
};

std::optional<int> env_threads() {
  const char* v = std::getenv("LGTLAB_THREADS");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw lgt::ConfigError("LGTLAB_THREADS", "expected a positive integer");
  return static_cast<int>(n);
}

int execute(lgt::Scenario scenario, const Options& opt) {
  try {
    std::string text = "{}";
    if (!opt.config.empty()) {
      std::ifstream f(opt.config);
      if (!f) throw lgt::ConfigError("--config", "cannot read " + opt.config);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    lgt::RunConfig cfg = lgt::parse_config(scenario, text);
    if (opt.tolerance) {
      if (*opt.tolerance <= 0.0) throw lgt::ConfigError("--tolerance", "must be positive");
      cfg.tolerance = *opt.tolerance;
    }
    cfg.all = opt.all;

    std::optional<int> threads = opt.threads;
    if (!threads) threads = env_threads();
    if (threads) {
      if (*threads < 1) throw lgt::ConfigError("--threads", "must be positive");
      lgt::kernels::set_threads(*threads);
    }

    const lgt::RunOutcome outcome = lgt::run(cfg, opt.out, std::cerr);
    int failed = 0;
    for (const auto& c : outcome.checks) failed += !c.pass && !c.soft;
    std::cout << lgt::to_string(scenario) << ": " << outcome.checks.size() << " checks, " << failed << " failed, exit "
              << outcome.exit_code << '\n';
    return outcome.exit_code;
  } catch (const lgt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return lgt::exit_config;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian lattice gauge theory lab"};
  app.require_subcommand(1);

  Options opt;
  const char* names[] = {"spectrum", "potential", "plaquette_convergence", "effective_check",
                         "dynamics", "verify",    "channels"};
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " scenario");
    sub->add_option("--config", opt.config, "JSON config file");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--threads", opt.threads, "OpenMP threads (fallback: LGTLAB_THREADS)");
    sub->add_option("--tolerance", opt.tolerance, "invariant check threshold");
    if (std::string(name) == "verify") sub->add_flag("--all", opt.all, "run the full invariant suite");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lgt::exit_config;
  }

  for (CLI::App* sub : app.get_subcommands()) return execute(lgt::scenario_from_string(sub->get_name()), opt);
  return lgt::exit_config;
}

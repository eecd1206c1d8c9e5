#pragma once

// Experiment runner behind the lgtlab executable: strict JSON configs,
// scenario dispatch, and deterministic manifests and CSV outputs.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgtlab/atommap.hpp"
#include "lgtlab/lattice.hpp"
#include "lgtlab/model.hpp"

namespace lgt {

enum class Scenario { spectrum, potential, plaquette_convergence, effective_check, dynamics, verify, channels };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

/// Configuration errors carry the offending key path (e.g. "lattice.spatial_dim").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  Scenario scenario = Scenario::spectrum;
  HamiltonianSpec spec;

  int spatial_dim = 2;
  std::vector<int> sizes{2, 2};
  Boundary boundary = Boundary::open;

  std::vector<int> charges;       // one label per vertex; empty means zero
  std::vector<int> static_color;  // su2 static color vertices
  int eigenvalues = 4;

  std::vector<int> r_list{0, 1, 2, 3, 4, 5};
  int origin = 0;
  bool conjugate = false;

  std::vector<double> g2_list{0.5, 1.0, 2.0};
  std::vector<int> ell_list{1, 2, 3};
  int lambda_ref = 8;
  std::vector<int> zn_list{3, 5, 7, 9};
  double zn_g2 = 1.0;

  std::vector<double> lambdas{20.0, 40.0, 80.0, 160.0};

  double t = 2.0;
  int steps = 40;
  int string_length = 3;
  int string_origin = -1;

  double omega1 = 1.0;
  double omega2 = 3.0;
  ScatteringCoefficients coefficients;  // empty: least-squares fit

  bool all = false;            // verify: full invariant suite
  double tolerance = 1e-10;    // invariant threshold
  double eigs_tolerance = 1e-9;

  Lattice lattice() const { return Lattice(spatial_dim, sizes, boundary); }
};

/// Scenario defaults, then the JSON text applied on top. Unknown keys and
/// wrong types raise ConfigError.
RunConfig parse_config(Scenario scenario, const std::string& json_text);
RunConfig default_config(Scenario scenario);

/// Normalized config as deterministic JSON text.
std::string config_json(const RunConfig& config);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
  bool soft = false;  // reported as a warning, never fails the run
};

enum ExitCode { exit_ok = 0, exit_invariant = 1, exit_config = 2, exit_numerical = 3 };

struct RunOutcome {
  int exit_code = exit_ok;
  std::vector<Check> checks;
  std::vector<std::string> files;  // written into the output directory
  std::string message;
};

/// Runs one scenario and writes manifest.json, timing.json and the scenario
/// CSVs into `out`. Progress and warnings go to `log`.
RunOutcome run(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);

}  // namespace lgt

#pragma once

// Scenario configuration and execution for the command-line front end.
// Scenarios are described by a flat key=value map (config file plus
// overrides); each run emits one CSV table per mode and a JSON summary that
// embeds the fully resolved configuration, so any run can be reproduced from
// its summary alone.

#include "zeno/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zeno::cli {

inline constexpr const char* kToolName = "zeno";
inline constexpr const char* kToolVersion = "0.1.0";

// Invalid configuration; the CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name = "scenario";
  std::string mode;  // conditional | montecarlo | zeno-limit | spectrum |
                     // sweep | kwiat-ifm
  double delta_t = 0.7;
  long n_steps = 2000;
  double total_time = 15.707963267948966;  // convergence-table horizon (5 pi)
  std::string initial_state = "00";
  std::uint64_t seed = 12345;
  long n_trajectories = 100000;
  std::string output_path = "zeno_out";
  // mode-specific knobs
  double grid_step = 1e-4;                // zeno-limit time grid step
  double t_max = 3.141592653589793;       // zeno-limit grid end
  double sweep_lo = 0.05;                 // sweep delta_t range
  double sweep_hi = 3.091592653589793;    // pi - 0.05
  long sweep_points = 100;
  long n_subdivisions = 100;              // kwiat-ifm measurement count
  double tolerance = 1e-10;               // asymptotic-limit tolerance
  long max_doublings = 60;
};

struct ScenarioResult {
  int exit_code = 0;  // 0 ok, 2 numerical non-convergence
  nlohmann::ordered_json summary;
  std::vector<std::string> csv_paths;
};

// key=value lines, '#' comments; throws ConfigError with the line number.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one "key=value" override; `origin` names the source in errors.
void apply_key_value(std::map<std::string, std::string>& config,
                     const std::string& key_value, const std::string& origin);

// Builds and validates a Scenario; unknown keys and malformed values throw.
Scenario scenario_from_config(const std::map<std::string, std::string>& config);

// Canonical key order and full-precision values; feeding the result back
// through scenario_from_config reproduces the scenario exactly.
std::vector<std::pair<std::string, std::string>> scenario_to_config(
    const Scenario& s);

// Named product / Bell states or 8 comma-separated reals (re, im per
// amplitude, normalized within 1e-6).
PureState parse_initial_state(const std::string& text);

// Runs the scenario, writing <output_path>.csv, <output_path>.json and (for
// spectrum mode) <output_path>_discrepancy.csv.  Configuration problems
// throw ConfigError; numerical non-convergence is reported via exit_code 2
// with the outputs still written.
ScenarioResult run_scenario(const Scenario& s);

// 12-significant-digit CSV number format.
std::string format_csv(double v);

}  // namespace zeno::cli

#include "zeno/scenario.hpp"

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr const char* kUsage = R"(zeno - unitary evolution interrupted by incomplete projective measurement

Usage:
  zeno <mode> [--config file] [--set key=value ...] [--out path]
  zeno --help | --version

Modes:
  conditional   Deterministic no-click trajectory of the photon + atom model
                plus the n -> infinity freezing limit of the step operator.
                CSV: step,time,survival_probability,step_survival,
                     fidelity_psi_plus,concurrence,entropy
  montecarlo    Born-rule ensemble of click/no-click records; compares the
                no-click fraction against the deterministic survival.
                CSV: first_click_step,count          (step 0 is the initial
                projective check, before any evolution)
  zeno-limit    Entanglement profile of the frequent-measurement limit
                dynamics exp(iPHPt)|00> plus the finite-n convergence table
                toward it over total_time.
                CSV: t,concurrence,entropy,prob_00,prob_psi_minus
  spectrum      Contraction diagnostics of the step operator at one delta_t
                (tau, phi, delta, the 2x2 contraction block and its Gram
                matrix), with a discrepancy table comparing closed forms
                against direct numerics in <out>_discrepancy.csv.
                CSV: delta_t,tau,sin_phi,cos_phi,delta,det_B,trace_B,
                     predicted_det_B,predicted_trace_B,b1,b2,norm_B
  sweep         The spectrum identities, freezing step count and limit
                survival across a delta_t range; points within 1e-9 of
                k*pi/2 carry status "excluded" (steps_to_converge is -1
                when the limit did not converge).
                CSV: delta_t,status,delta,sin_phi,det_B,trace_B,norm_B,
                     steps_to_converge,p_infinity_00
  kwiat-ifm     Interaction-free detection of a static absorber: the photon
                rotates between two cavities for a half period split into
                n_subdivisions checks.  Reports deterministic, closed-form
                and sampled no-click probabilities, and the no-measurement
                (object absent) survival.
                CSV: step,time,survival_present

Configuration (config file lines and --set arguments are key=value; '#'
starts a comment; later --set overrides win):
  name            scenario label                            [scenario]
  mode            one of the modes above (must match the positional mode)
  delta_t         measurement period                        [0.7]
  n_steps         trajectory / ensemble step count          [2000]
  total_time      convergence-table horizon (zeno-limit)    [5*pi]
  initial_state   00 | 01 | 10 | 11 | psi+ | psi- | 8 comma-separated reals
                  (re, im per amplitude, normalized to 1e-6) [00]
  seed            ensemble seed                             [12345]
  n_trajectories  ensemble size                             [100000]
  output_path     output prefix (also --out)                [zeno_out]
  grid_step       zeno-limit grid step                      [1e-4]
  t_max           zeno-limit grid end, in (0, pi]           [pi]
  sweep_lo        sweep range start, > 0                    [0.05]
  sweep_hi        sweep range end, < pi                     [pi - 0.05]
  sweep_points    sweep point count, >= 2                   [100]
  n_subdivisions  kwiat-ifm measurement count               [100]
  tolerance       freezing-limit convergence tolerance      [1e-10]
  max_doublings   freezing-limit squaring cap               [60]

Outputs: <output_path>.csv (and <output_path>_discrepancy.csv for spectrum)
with a header row, comma separators, 12 significant digits and LF endings,
plus <output_path>.json carrying the tool version, the fully resolved
configuration and the headline results.  Re-running the configuration
embedded in the JSON reproduces the CSV byte for byte.

Environment:
  ZENO_THREADS    worker count for ensembles; results are identical for any
                  value.

Exit codes: 0 success, 1 configuration error, 2 numerical non-convergence.
)";

int fail_config(const std::string& message) {
  std::fprintf(stderr, "zeno: %s\n", message.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::fputs(kUsage, stderr);
    return 1;
  }
  if (args[0] == "--help" || args[0] == "-h") {
    std::fputs(kUsage, stdout);
    return 0;
  }
  if (args[0] == "--version") {
    std::printf("%s %s\n", zeno::cli::kToolName, zeno::cli::kToolVersion);
    return 0;
  }

  try {
    const std::string mode = args[0];
    std::map<std::string, std::string> config;
    std::string out_override;
    for (size_t i = 1; i < args.size(); ++i) {
      const std::string& arg = args[i];
      auto next_value = [&](const char* flag) -> const std::string& {
        if (i + 1 >= args.size())
          throw zeno::cli::ConfigError(std::string(flag) +
                                       " requires an argument");
        return args[++i];
      };
      if (arg == "--config") {
        auto file = zeno::cli::parse_config_file(next_value("--config"));
        for (auto& [k, v] : file) config[k] = v;
      } else if (arg == "--set") {
        zeno::cli::apply_key_value(config, next_value("--set"), "--set");
      } else if (arg == "--out") {
        out_override = next_value("--out");
      } else {
        throw zeno::cli::ConfigError("unknown argument '" + arg + "'");
      }
    }
    if (auto it = config.find("mode");
        it != config.end() && it->second != mode)
      throw zeno::cli::ConfigError("config sets mode '" + it->second +
                                   "' but the command line asks for '" + mode +
                                   "'");
    config["mode"] = mode;
    if (!out_override.empty()) config["output_path"] = out_override;

    const zeno::cli::Scenario scenario =
        zeno::cli::scenario_from_config(config);
    const zeno::cli::ScenarioResult result = zeno::cli::run_scenario(scenario);
    for (const std::string& path : result.csv_paths)
      std::printf("wrote %s\n", path.c_str());
    std::printf("wrote %s.json\n", scenario.output_path.c_str());
    if (result.exit_code == 2)
      std::fprintf(stderr,
                   "zeno: numerical non-convergence (see JSON summary)\n");
    return result.exit_code;
  } catch (const zeno::cli::ConfigError& e) {
    return fail_config(e.what());
  } catch (const std::exception& e) {
    return fail_config(e.what());
  }
}

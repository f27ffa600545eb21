#include "zeno/scenario.hpp"

#include "zeno/engine.hpp"
#include "zeno/entanglement.hpp"
#include "zeno/model.hpp"
#include "zeno/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace zeno::cli {

namespace {

constexpr double kPi = std::numbers::pi;

using nlohmann::ordered_json;

const std::array<const char*, 6> kModes = {"conditional", "montecarlo",
                                           "zeno-limit", "spectrum",
                                           "sweep", "kwiat-ifm"};

const std::array<const char*, 17> kKeys = {
    "name",        "mode",           "delta_t",       "n_steps",
    "total_time",  "initial_state",  "seed",          "n_trajectories",
    "output_path", "grid_step",      "t_max",         "sweep_lo",
    "sweep_hi",    "sweep_points",   "n_subdivisions", "tolerance",
    "max_doublings"};

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v))
      throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a finite number, got '" +
                      value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value +
                      "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key +
                      "': expected a non-negative integer, got '" + value +
                      "'");
  }
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// Dominant direction of a (near) rank-1 Hermitian limit matrix.
PureState dominant_direction(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  return PureState::normalized(svd.matrixU().col(0));
}

struct CsvWriter {
  std::string text;
  void header(const std::string& h) { text += h + "\n"; }
  template <typename... Cols>
  void row(const Cols&... cols) {
    bool first = true;
    ((text += (first ? "" : ","), text += cell(cols), first = false), ...);
    text += "\n";
  }
  static std::string cell(double v) { return format_csv(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
};

ordered_json base_summary(const Scenario& s) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["mode"] = s.mode;
  ordered_json config;
  for (const auto& [key, value] : scenario_to_config(s)) config[key] = value;
  j["config"] = std::move(config);
  return j;
}

// ---------------------------------------------------------------------------
// conditional: deterministic no-click trajectory + asymptotic limit
// ---------------------------------------------------------------------------
ScenarioResult run_conditional(const Scenario& s) {
  const PureState psi0 = parse_initial_state(s.initial_state);
  const TwoQubitModel model = build_model();
  const InterruptedEvolution ev = model_evolution(model, s.delta_t);
  const PureState psi_plus = bell_state(BellSign::plus);
  const PureState psi_minus = bell_state(BellSign::minus);

  const ConditionalTrajectory traj =
      conditional_trajectory(ev, psi0, s.n_steps);

  CsvWriter csv;
  csv.header(
      "step,time,survival_probability,step_survival,fidelity_psi_plus,"
      "concurrence,entropy");
  for (const TrajectoryRecord& r : traj.records) {
    csv.row(r.step_index, r.time, r.survival_probability, r.step_survival,
            r.conditional_state.overlap2(psi_plus),
            concurrence(r.conditional_state),
            entanglement_entropy(r.conditional_state));
  }

  const AsymptoticLimit limit =
      asymptotic_limit(ev, s.tolerance, static_cast<int>(s.max_doublings));

  ScenarioResult result;
  result.summary = base_summary(s);
  ordered_json& res = result.summary["results"];
  res["trajectory_status"] =
      traj.status == TrajectoryStatus::completed ? "completed" : "annihilated";
  if (!traj.records.empty()) {
    const TrajectoryRecord& last = traj.records.back();
    res["final_step"] = last.step_index;
    res["final_survival_probability"] = last.survival_probability;
    res["final_fidelity_psi_plus"] = last.conditional_state.overlap2(psi_plus);
    res["final_fidelity_psi_minus"] =
        last.conditional_state.overlap2(psi_minus);
  } else {
    res["final_step"] = traj.terminated_at_step;
    res["final_survival_probability"] = traj.terminal_survival;
  }
  res["predicted_infinite_survival"] = psi0.overlap2(psi_plus);
  res["limit_converged"] = limit.converged;
  res["limit_doublings"] = limit.doublings;
  res["limit_fixed_point_residual"] = limit.fixed_point_residual;
  if (limit.converged) {
    const PureState v = dominant_direction(limit.limit);
    res["limit_fidelity_psi_plus"] = v.overlap2(psi_plus);
    res["limit_survival_probability"] =
        (limit.limit * psi0.amplitudes()).squaredNorm();
  }
  result.exit_code = limit.converged ? 0 : 2;

  const std::string csv_path = s.output_path + ".csv";
  write_text_file(csv_path, csv.text);
  result.csv_paths.push_back(csv_path);
  return result;
}

// ---------------------------------------------------------------------------
// zeno-limit: entanglement profile of the limit dynamics + convergence table
// ---------------------------------------------------------------------------
ScenarioResult run_zeno_limit(const Scenario& s) {
  if (!(s.grid_step > 0))
    throw ConfigError("zeno-limit: grid_step must be > 0");
  if (!(s.t_max > 0) || s.t_max > kPi + 1e-12)
    throw ConfigError("zeno-limit: t_max must lie in (0, pi]");

  std::vector<double> grid;
  for (long i = 0;; ++i) {
    const double t = static_cast<double>(i) * s.grid_step;
    if (t > s.t_max + 1e-12) break;
    grid.push_back(t);
  }
  const EntanglementProfile profile = zeno_entanglement_profile(grid);

  const TwoQubitModel model = build_model();
  const InterruptedEvolution ev0 = model_evolution(model, 1.0);  // any dt
  const Matrix h_cut = zeno_limit_hamiltonian(ev0);
  const HermitianEig eig = hermitian_eig(h_cut);
  const Vector psi0 = basis_state(kBasis00).amplitudes();
  const Vector psi0_eig = eig.eigenvectors.adjoint() * psi0;
  const Vector psi_minus = bell_state(BellSign::minus).amplitudes();
  const Vector e00 = basis_state(kBasis00).amplitudes();

  CsvWriter csv;
  csv.header("t,concurrence,entropy,prob_00,prob_psi_minus");
  for (size_t i = 0; i < grid.size(); ++i) {
    Vector coeff(psi0_eig.size());
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
      coeff(k) =
          std::exp(Complex(0.0, eig.eigenvalues(k) * grid[i])) * psi0_eig(k);
    const Vector psi = eig.eigenvectors * coeff;
    csv.row(grid[i], profile.samples[i].concurrence,
            profile.samples[i].entropy, std::norm(e00.dot(psi)),
            std::norm(psi_minus.dot(psi)));
  }

  const std::array<long, 4> ns = {100, 1000, 10000, 100000};
  const ConvergenceStudy study = zeno_convergence_study(
      model.hamiltonian, model.survival_projector, s.total_time, ns,
      basis_state(kBasis00));

  ScenarioResult result;
  result.summary = base_summary(s);
  ordered_json& res = result.summary["results"];
  res["argmax_time"] = profile.argmax_time;
  res["max_concurrence"] = profile.max_concurrence;
  res["theoretical_argmax_time"] = kPi / (2.0 * std::numbers::sqrt2);
  ordered_json conv = ordered_json::array();
  for (const ConvergencePoint& pt : study.points)
    conv.push_back({{"n", pt.n}, {"deviation", pt.deviation}});
  res["limit_convergence"] = std::move(conv);
  res["limit_convergence_total_time"] = s.total_time;
  res["fitted_decay_order"] = study.fitted_decay_order;

  const std::string csv_path = s.output_path + ".csv";
  write_text_file(csv_path, csv.text);
  result.csv_paths.push_back(csv_path);
  return result;
}

// ---------------------------------------------------------------------------
// spectrum: contraction diagnostics + printed-form discrepancy table
// ---------------------------------------------------------------------------
ScenarioResult run_spectrum(const Scenario& s) {
  if (is_excluded_delta_t(s.delta_t))
    throw ConfigError(
        "spectrum: delta_t = " + format_full(s.delta_t) +
        " lies within 1e-9 of the excluded set {k*pi/2: k = 0, 1, ...}; "
        "closed forms are undefined there");
  const TwoQubitModel model = build_model();
  const InterruptedEvolution ev = model_evolution(model, s.delta_t);
  const SpectralReport rep = spectral_report(ev);

  CsvWriter csv;
  csv.header(
      "delta_t,tau,sin_phi,cos_phi,delta,det_B,trace_B,predicted_det_B,"
      "predicted_trace_B,b1,b2,norm_B");
  csv.row(rep.delta_t, rep.tau, rep.sin_phi, rep.cos_phi, rep.delta, rep.det_B,
          rep.trace_B, rep.predicted_det, rep.predicted_trace, rep.b1, rep.b2,
          rep.norm_B);

  std::vector<double> t_grid;
  for (int g = 0; g < 50; ++g) t_grid.push_back(kPi * g / 49.0);
  std::vector<DiscrepancyEntry> table = limit_propagator_discrepancy(t_grid);
  const std::vector<DiscrepancyEntry> pattern =
      entangled_pattern_discrepancy(s.delta_t);
  table.insert(table.end(), pattern.begin(), pattern.end());

  CsvWriter disc;
  disc.header("source,row,col,computed,reference,abs_diff");
  double max_eq_limit = 0.0, max_pattern = 0.0;
  for (const DiscrepancyEntry& e : table) {
    disc.row(e.source, static_cast<long>(e.row), static_cast<long>(e.col),
             e.computed, e.reference, e.abs_diff);
    if (std::string(e.source) == "zeno_limit_closed_form")
      max_eq_limit = std::max(max_eq_limit, e.abs_diff);
    else
      max_pattern = std::max(max_pattern, e.abs_diff);
  }

  const bool phi_ok =
      std::abs(rep.sin_phi * rep.sin_phi + rep.cos_phi * rep.cos_phi - 1.0) <=
      1e-12;
  const bool det_ok = std::abs(rep.det_B - rep.predicted_det) <= 1e-11;
  const bool trace_ok = std::abs(rep.trace_B - rep.predicted_trace) <= 1e-11;
  const bool norm_ok = rep.norm_B < 1.0;

  ScenarioResult result;
  result.summary = base_summary(s);
  ordered_json& res = result.summary["results"];
  res["tau"] = rep.tau;
  res["sin_phi"] = rep.sin_phi;
  res["cos_phi"] = rep.cos_phi;
  res["delta"] = rep.delta;
  res["det_B"] = rep.det_B;
  res["trace_B"] = rep.trace_B;
  res["norm_B"] = rep.norm_B;
  res["phi_identity_ok"] = phi_ok;
  res["det_identity_ok"] = det_ok;
  res["trace_identity_ok"] = trace_ok;
  res["norm_B_below_one"] = norm_ok;
  res["spectral_identities_pass"] = phi_ok && det_ok && trace_ok && norm_ok;
  res["max_abs_discrepancy_limit_propagator"] = max_eq_limit;
  res["max_abs_discrepancy_entangled_pattern"] = max_pattern;

  const std::string csv_path = s.output_path + ".csv";
  const std::string disc_path = s.output_path + "_discrepancy.csv";
  write_text_file(csv_path, csv.text);
  write_text_file(disc_path, disc.text);
  result.csv_paths.push_back(csv_path);
  result.csv_paths.push_back(disc_path);
  return result;
}

// ---------------------------------------------------------------------------
// sweep: spectral identities and freezing behaviour across delta_t
// ---------------------------------------------------------------------------
ScenarioResult run_sweep(const Scenario& s) {
  if (!(s.sweep_lo > 0.0) || !(s.sweep_hi < kPi) || s.sweep_points < 2)
    throw ConfigError(
        "sweep: requires 0 < sweep_lo < sweep_hi < pi and sweep_points >= 2");
  if (!(s.sweep_lo < s.sweep_hi))
    throw ConfigError("sweep: sweep_lo must be below sweep_hi");

  const TwoQubitModel model = build_model();
  const PureState psi00 = basis_state(kBasis00);

  CsvWriter csv;
  csv.header(
      "delta_t,status,delta,sin_phi,det_B,trace_B,norm_B,steps_to_converge,"
      "p_infinity_00");
  long n_excluded = 0, n_nonconverged = 0;
  double max_det_dev = 0.0, max_trace_dev = 0.0, max_norm = 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (long i = 0; i < s.sweep_points; ++i) {
    const double dt = s.sweep_lo + (s.sweep_hi - s.sweep_lo) *
                                       static_cast<double>(i) /
                                       static_cast<double>(s.sweep_points - 1);
    const double c = std::cos(dt);
    const double delta = c * c;
    const InterruptedEvolution ev = model_evolution(model, dt);
    const AsymptoticLimit limit = asymptotic_limit(
        ev, s.tolerance, static_cast<int>(s.max_doublings));
    const double steps =
        limit.converged ? std::pow(2.0, limit.doublings) : -1.0;
    const double p_inf =
        limit.converged ? (limit.limit * psi00.amplitudes()).squaredNorm()
                        : nan;
    if (is_excluded_delta_t(dt)) {
      ++n_excluded;
      csv.row(dt, "excluded", delta, nan, nan, nan, nan, steps, p_inf);
      continue;
    }
    if (!limit.converged) ++n_nonconverged;
    const SpectralReport rep = spectral_report(ev);
    csv.row(dt, "ok", rep.delta, rep.sin_phi, rep.det_B, rep.trace_B,
            rep.norm_B, steps, p_inf);
    max_det_dev = std::max(max_det_dev, std::abs(rep.det_B - rep.predicted_det));
    max_trace_dev =
        std::max(max_trace_dev, std::abs(rep.trace_B - rep.predicted_trace));
    max_norm = std::max(max_norm, rep.norm_B);
  }

  ScenarioResult result;
  result.summary = base_summary(s);
  ordered_json& res = result.summary["results"];
  res["n_points"] = s.sweep_points;
  res["n_excluded"] = n_excluded;
  res["n_nonconverged"] = n_nonconverged;
  res["max_abs_det_identity_deviation"] = max_det_dev;
  res["max_abs_trace_identity_deviation"] = max_trace_dev;
  res["max_norm_B"] = max_norm;
  res["spectral_identities_pass"] =
      max_det_dev <= 1e-11 && max_trace_dev <= 1e-11 && max_norm < 1.0;
  result.exit_code = n_nonconverged == 0 ? 0 : 2;

  const std::string csv_path = s.output_path + ".csv";
  write_text_file(csv_path, csv.text);
  result.csv_paths.push_back(csv_path);
  return result;
}

// ---------------------------------------------------------------------------
// montecarlo: Born-rule ensemble vs the deterministic survival oracle
// ---------------------------------------------------------------------------
ScenarioResult run_montecarlo(const Scenario& s) {
  const PureState psi0 = parse_initial_state(s.initial_state);
  const TwoQubitModel model = build_model();

  McConfig config{.seed = s.seed,
                  .n_trajectories = s.n_trajectories,
                  .n_steps = s.n_steps,
                  .delta_t = s.delta_t,
                  .initial_state = psi0,
                  .reference_state = bell_state(BellSign::plus),
                  .survivor_sample_cap = 1000};
  const McResult mc =
      run_ensemble(model.hamiltonian, model.survival_projector, config);

  const InterruptedEvolution ev = model_evolution(model, s.delta_t);
  const Vector iterated =
      matrix_power(step_operator(ev),
                   static_cast<unsigned long long>(s.n_steps)) *
      psi0.amplitudes();
  const double p_det = iterated.squaredNorm();

  CsvWriter csv;
  csv.header("first_click_step,count");
  for (size_t i = 0; i < mc.click_step_histogram.size(); ++i)
    csv.row(static_cast<long>(i), mc.click_step_histogram[i]);

  ScenarioResult result;
  result.summary = base_summary(s);
  ordered_json& res = result.summary["results"];
  res["no_click_fraction"] = mc.no_click_fraction;
  res["standard_error"] = mc.standard_error;
  res["n_no_click"] = mc.n_no_click;
  res["deterministic_survival"] = p_det;
  // The binomial error of the oracle probability keeps the band meaningful
  // when the sampled fraction is exactly 0 or 1.
  const double se_det =
      std::sqrt(p_det * (1.0 - p_det) / double(s.n_trajectories));
  res["agreement_within_4_sigma"] =
      std::abs(mc.no_click_fraction - p_det) <=
      4.0 * std::max(mc.standard_error, se_det);
  if (mc.fidelity_defined)
    res["mean_survivor_fidelity_psi_plus"] = mc.mean_survivor_fidelity;
  else
    res["mean_survivor_fidelity_psi_plus"] = nullptr;

  const std::string csv_path = s.output_path + ".csv";
  write_text_file(csv_path, csv.text);
  result.csv_paths.push_back(csv_path);
  return result;
}

// ---------------------------------------------------------------------------
// kwiat-ifm: interaction-free detection with a static absorber
// ---------------------------------------------------------------------------
ScenarioResult run_kwiat(const Scenario& s) {
  if (s.n_subdivisions < 1)
    throw ConfigError("kwiat-ifm: n_subdivisions must be >= 1");
  const long n = s.n_subdivisions;
  const double dt = (kPi / 2.0) / static_cast<double>(n);

  // Photon rotates between the cavities; the atom is a static absorber
  // prepared in its excited state, so the joint start is |01>.
  const Matrix h = kron(pauli_y(), Matrix::Identity(2, 2));
  const TwoQubitModel model = build_model();
  const PureState psi0 = basis_state(kBasis01);
  const InterruptedEvolution ev(h, model.survival_projector, dt);

  const ConditionalTrajectory traj = conditional_trajectory(ev, psi0, n);
  CsvWriter csv;
  csv.header("step,time,survival_present");
  for (const TrajectoryRecord& r : traj.records)
    csv.row(r.step_index, r.time, r.survival_probability);
  const double p_present =
      traj.records.empty() ? 0.0 : traj.records.back().survival_probability;
  const double p_closed =
      std::pow(std::cos(kPi / (2.0 * static_cast<double>(n))),
               2.0 * static_cast<double>(n));

  // Object absent: free evolution for the full half period; report the
  // probability of still finding the photon in the starting cavity.
  const Vector free_final =
      mat_exp_i_hermitian(h, kPi / 2.0) * psi0.amplitudes();
  const double p_absent =
      std::norm(free_final(kBasis00)) + std::norm(free_final(kBasis01));

  McConfig config{.seed = s.seed,
                  .n_trajectories = s.n_trajectories,
                  .n_steps = n,
                  .delta_t = dt,
                  .initial_state = psi0,
                  .reference_state = std::nullopt,
                  .survivor_sample_cap = 1000};
  const McResult mc = run_ensemble(h, model.survival_projector, config);

  ScenarioResult result;
  result.summary = base_summary(s);
  ordered_json& res = result.summary["results"];
  res["n_subdivisions"] = n;
  res["p_present_deterministic"] = p_present;
  res["p_present_closed_form"] = p_closed;
  res["p_absent"] = p_absent;
  res["mc_no_click_fraction"] = mc.no_click_fraction;
  res["mc_standard_error"] = mc.standard_error;

  const std::string csv_path = s.output_path + ".csv";
  write_text_file(csv_path, csv.text);
  result.csv_paths.push_back(csv_path);
  return result;
}

}  // namespace

std::string format_csv(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> config;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    try {
      apply_key_value(config, body, "");
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return config;
}

void apply_key_value(std::map<std::string, std::string>& config,
                     const std::string& key_value, const std::string& origin) {
  const std::string prefix = origin.empty() ? "" : origin + ": ";
  const auto eq = key_value.find('=');
  if (eq == std::string::npos)
    throw ConfigError(prefix + "expected key=value, got '" + key_value + "'");
  const std::string key = trimmed(key_value.substr(0, eq));
  const std::string value = trimmed(key_value.substr(eq + 1));
  if (std::find_if(kKeys.begin(), kKeys.end(), [&](const char* k) {
        return key == k;
      }) == kKeys.end())
    throw ConfigError(prefix + "unknown key '" + key + "'");
  if (value.empty()) throw ConfigError(prefix + "empty value for '" + key + "'");
  config[key] = value;
}

Scenario scenario_from_config(
    const std::map<std::string, std::string>& config) {
  Scenario s;
  for (const auto& [key, value] : config) {
    if (key == "name") s.name = value;
    else if (key == "mode") s.mode = value;
    else if (key == "delta_t") s.delta_t = parse_double(key, value);
    else if (key == "n_steps") s.n_steps = parse_long(key, value);
    else if (key == "total_time") s.total_time = parse_double(key, value);
    else if (key == "initial_state") s.initial_state = value;
    else if (key == "seed") s.seed = parse_u64(key, value);
    else if (key == "n_trajectories") s.n_trajectories = parse_long(key, value);
    else if (key == "output_path") s.output_path = value;
    else if (key == "grid_step") s.grid_step = parse_double(key, value);
    else if (key == "t_max") s.t_max = parse_double(key, value);
    else if (key == "sweep_lo") s.sweep_lo = parse_double(key, value);
    else if (key == "sweep_hi") s.sweep_hi = parse_double(key, value);
    else if (key == "sweep_points") s.sweep_points = parse_long(key, value);
    else if (key == "n_subdivisions") s.n_subdivisions = parse_long(key, value);
    else if (key == "tolerance") s.tolerance = parse_double(key, value);
    else if (key == "max_doublings") s.max_doublings = parse_long(key, value);
    else throw ConfigError("unknown key '" + key + "'");
  }
  if (s.mode.empty()) throw ConfigError("missing required key 'mode'");
  if (std::find_if(kModes.begin(), kModes.end(), [&](const char* m) {
        return s.mode == m;
      }) == kModes.end())
    throw ConfigError(
        "unknown mode '" + s.mode +
        "' (expected conditional, montecarlo, zeno-limit, spectrum, sweep or "
        "kwiat-ifm)");
  if (!(s.delta_t > 0.0)) throw ConfigError("delta_t must be > 0");
  if (s.n_steps < 0) throw ConfigError("n_steps must be >= 0");
  if (s.n_trajectories < 1) throw ConfigError("n_trajectories must be >= 1");
  if (!(s.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  if (s.max_doublings < 1 || s.max_doublings > 200)
    throw ConfigError("max_doublings must lie in [1, 200]");
  if (s.output_path.empty()) throw ConfigError("output_path must not be empty");
  return s;
}

std::vector<std::pair<std::string, std::string>> scenario_to_config(
    const Scenario& s) {
  return {{"name", s.name},
          {"mode", s.mode},
          {"delta_t", format_full(s.delta_t)},
          {"n_steps", std::to_string(s.n_steps)},
          {"total_time", format_full(s.total_time)},
          {"initial_state", s.initial_state},
          {"seed", std::to_string(s.seed)},
          {"n_trajectories", std::to_string(s.n_trajectories)},
          {"output_path", s.output_path},
          {"grid_step", format_full(s.grid_step)},
          {"t_max", format_full(s.t_max)},
          {"sweep_lo", format_full(s.sweep_lo)},
          {"sweep_hi", format_full(s.sweep_hi)},
          {"sweep_points", std::to_string(s.sweep_points)},
          {"n_subdivisions", std::to_string(s.n_subdivisions)},
          {"tolerance", format_full(s.tolerance)},
          {"max_doublings", std::to_string(s.max_doublings)}};
}

PureState parse_initial_state(const std::string& text) {
  if (text == "00" || text == "01" || text == "10" || text == "11") {
    const int idx = (text[0] - '0') * 2 + (text[1] - '0');
    return basis_state(idx);
  }
  if (text == "psi+") return bell_state(BellSign::plus);
  if (text == "psi-") return bell_state(BellSign::minus);
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (item.empty()) break;
    parts.push_back(parse_double("initial_state", item));
  }
  if (parts.size() != 8)
    throw ConfigError(
        "initial_state: expected a named state (00, 01, 10, 11, psi+, psi-) "
        "or 8 comma-separated reals (re, im per amplitude)");
  Vector v(4);
  for (int k = 0; k < 4; ++k) v(k) = Complex(parts[2 * k], parts[2 * k + 1]);
  if (std::abs(v.norm() - 1.0) > 1e-6)
    throw ConfigError("initial_state: vector norm deviates from 1 by more "
                      "than 1e-6 (norm = " + format_full(v.norm()) + ")");
  return PureState::normalized(v);
}

ScenarioResult run_scenario(const Scenario& s) {
  ScenarioResult result;
  if (s.mode == "conditional") result = run_conditional(s);
  else if (s.mode == "montecarlo") result = run_montecarlo(s);
  else if (s.mode == "zeno-limit") result = run_zeno_limit(s);
  else if (s.mode == "spectrum") result = run_spectrum(s);
  else if (s.mode == "sweep") result = run_sweep(s);
  else if (s.mode == "kwiat-ifm") result = run_kwiat(s);
  else throw ConfigError("unknown mode '" + s.mode + "'");

  ordered_json outputs;
  outputs["csv"] = result.csv_paths;
  outputs["json"] = s.output_path + ".json";
  result.summary["outputs"] = std::move(outputs);
  result.summary["exit_code"] = result.exit_code;
  write_text_file(s.output_path + ".json", result.summary.dump(2) + "\n");
  return result;
}

}  // namespace zeno::cli

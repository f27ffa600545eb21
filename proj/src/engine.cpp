#include "zeno/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace zeno {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_model(const InterruptedEvolution& ev, const char* op) {
  const TwoQubitModel model = build_model();
  const bool h_ok = ev.dim() == 4 &&
                    (ev.hamiltonian() - model.hamiltonian).cwiseAbs().maxCoeff() <=
                        kConstructionTol;
  const bool p_ok =
      h_ok && (ev.survival_projector() - model.survival_projector)
                      .cwiseAbs()
                      .maxCoeff() <= kConstructionTol;
  if (!h_ok || !p_ok)
    throw std::invalid_argument(std::string(op) +
                                ": requires the photon + atom model");
}

void require_admissible(double delta_t, const char* op) {
  if (is_excluded_delta_t(delta_t))
    throw std::invalid_argument(
        std::string(op) + ": delta_t = " + std::to_string(delta_t) +
        " lies within 1e-9 of the excluded set {k*pi/2: k = 0, 1, ...}");
}

}  // namespace

InterruptedEvolution::InterruptedEvolution(Matrix hamiltonian,
                                           Matrix survival_projector,
                                           double delta_t)
    : hamiltonian_(std::move(hamiltonian)),
      projector_(std::move(survival_projector)),
      delta_t_(delta_t) {
  const Eigen::Index d = hamiltonian_.rows();
  if (d < 2 || d > 8 || hamiltonian_.cols() != d)
    throw std::invalid_argument(
        "InterruptedEvolution: Hamiltonian must be square with dimension in "
        "[2, 8]");
  if (projector_.rows() != d || projector_.cols() != d)
    throw std::invalid_argument(
        "InterruptedEvolution: projector dimension mismatch");
  if (!hamiltonian_.allFinite() || !projector_.allFinite())
    throw std::invalid_argument("InterruptedEvolution: non-finite entries");
  if (!is_hermitian(hamiltonian_))
    throw std::invalid_argument(
        "InterruptedEvolution: Hamiltonian is not Hermitian within 1e-12");
  if (!is_hermitian(projector_) || !is_idempotent(projector_))
    throw std::invalid_argument(
        "InterruptedEvolution: survival projector is not a Hermitian "
        "idempotent within 1e-12");
  const double rank = projector_.trace().real();
  if (rank < 0.5 || rank > static_cast<double>(d) - 0.5)
    throw std::invalid_argument(
        "InterruptedEvolution: projector rank must satisfy 1 <= r < dim");
  if (!(delta_t_ > 0.0))
    throw std::invalid_argument("InterruptedEvolution: delta_t must be > 0");
  propagator_ = mat_exp_i_hermitian(hamiltonian_, delta_t_);
}

InterruptedEvolution model_evolution(const TwoQubitModel& model,
                                     double delta_t) {
  return InterruptedEvolution(model.hamiltonian, model.survival_projector,
                              delta_t);
}

Matrix step_operator(const InterruptedEvolution& ev) {
  return ev.survival_projector() * ev.propagator() * ev.survival_projector();
}

ConditionalTrajectory conditional_trajectory(const InterruptedEvolution& ev,
                                             const PureState& psi0,
                                             long n_steps) {
  if (psi0.dim() != ev.dim())
    throw std::invalid_argument("conditional_trajectory: state dimension "
                                "does not match the evolution");
  if (n_steps < 0)
    throw std::invalid_argument("conditional_trajectory: n_steps must be >= 0");

  ConditionalTrajectory out;
  out.records.reserve(static_cast<size_t>(n_steps) + 1);
  const Matrix& p = ev.survival_projector();
  const Matrix& u = ev.propagator();

  Vector projected = p * psi0.amplitudes();
  double step_q = projected.squaredNorm();
  double cumulative = step_q;
  if (cumulative < kSurvivalUnderflowFloor) {
    out.status = TrajectoryStatus::annihilated;
    out.terminated_at_step = 0;
    out.terminal_survival = cumulative;
    return out;
  }
  Vector state = projected / std::sqrt(step_q);
  out.records.push_back(
      {0, 0.0, PureState::normalized(state), cumulative, step_q});

  for (long k = 1; k <= n_steps; ++k) {
    projected = p * (u * state);
    step_q = projected.squaredNorm();
    cumulative *= step_q;
    if (cumulative < kSurvivalUnderflowFloor) {
      out.status = TrajectoryStatus::annihilated;
      out.terminated_at_step = k;
      out.terminal_survival = cumulative;
      return out;
    }
    state = projected / std::sqrt(step_q);
    out.records.push_back({k, static_cast<double>(k) * ev.delta_t(),
                           PureState::normalized(state), cumulative, step_q});
  }
  return out;
}

Matrix zeno_limit_hamiltonian(const InterruptedEvolution& ev) {
  return ev.survival_projector() * ev.hamiltonian() * ev.survival_projector();
}

Matrix zeno_limit_unitary(const InterruptedEvolution& ev, double t) {
  return mat_exp_i_hermitian(zeno_limit_hamiltonian(ev), t);
}

Matrix zeno_limit_closed_form(double t) {
  const double c = std::cos(kSqrt2 * t), s = std::sin(kSqrt2 * t);
  const double ch = std::cos(kSqrt2 / 2.0 * t), sh = std::sin(kSqrt2 / 2.0 * t);
  Matrix u(3, 3);
  u << Complex(c), Complex(-s / kSqrt2), Complex(s / kSqrt2),
      Complex(s / kSqrt2), Complex(ch * ch), Complex(sh * sh),
      Complex(-s / kSqrt2), Complex(sh * sh), Complex(ch * ch);
  return u;
}

ConvergenceStudy zeno_convergence_study(const Matrix& hamiltonian,
                                        const Matrix& survival_projector,
                                        double total_time,
                                        std::span<const long> n_values,
                                        const PureState& psi0) {
  if (!(total_time > 0.0))
    throw std::invalid_argument("zeno_convergence_study: total_time must be > 0");
  for (size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] <= 0 || (i > 0 && n_values[i] <= n_values[i - 1]))
      throw std::invalid_argument(
          "zeno_convergence_study: n_values must be positive and ascending");
  }
  const Matrix& p = survival_projector;
  const Matrix h_cut = p * hamiltonian * p;
  const Vector target = p * (mat_exp_i_hermitian(h_cut, total_time) *
                             psi0.amplitudes());

  ConvergenceStudy study;
  study.points.reserve(n_values.size());
  for (long n : n_values) {
    const Matrix w =
        p * mat_exp_i_hermitian(hamiltonian, total_time / double(n)) * p;
    const Vector iterated =
        matrix_power(w, static_cast<unsigned long long>(n)) * psi0.amplitudes();
    study.points.push_back({n, (iterated - target).norm()});
  }

  // Least-squares slope of log(deviation) against log(n); reported with the
  // sign flipped so an O(1/n) decay reads as order ~1.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long m = 0;
  for (const auto& pt : study.points) {
    if (pt.deviation <= 0) continue;
    const double x = std::log(double(pt.n)), y = std::log(pt.deviation);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  study.fitted_decay_order =
      (m >= 2) ? -(double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx)
               : 0.0;
  return study;
}

Matrix matrix_power(const Matrix& m, unsigned long long n) {
  Matrix acc = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (n > 0) {
    if (n & 1ull) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

AsymptoticLimit asymptotic_limit(const InterruptedEvolution& ev,
                                 double tolerance, int max_doublings) {
  if (!(tolerance > 0.0))
    throw std::invalid_argument("asymptotic_limit: tolerance must be > 0");
  const Matrix w = step_operator(ev);
  AsymptoticLimit out;
  Matrix m = w;
  for (int d = 1; d <= max_doublings; ++d) {
    const Matrix m2 = m * m;
    out.final_delta = operator_norm(m2 - m);
    m = m2;
    out.doublings = d;
    if (out.final_delta < tolerance) {
      out.fixed_point_residual = operator_norm(w * m - m);
      // Settled squaring with a failing one-step residual is a period-two
      // oscillation; further squaring only erodes the iterate, so stop here.
      out.converged = out.fixed_point_residual < tolerance;
      out.limit = std::move(m);
      return out;
    }
  }
  out.fixed_point_residual = operator_norm(w * m - m);
  out.converged = false;
  out.limit = std::move(m);
  return out;
}

Matrix step_operator_entangled_basis(const InterruptedEvolution& ev) {
  require_model(ev, "step_operator_entangled_basis");
  require_admissible(ev.delta_t(), "step_operator_entangled_basis");
  const EntangledBasis basis = entangled_basis(ev.delta_t());
  const Matrix w = step_operator(ev);
  Matrix form(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      form(j, k) =
          basis.vectors[j].amplitudes().dot(w * basis.vectors[k].amplitudes());
  return form;
}

SpectralReport spectral_report(const InterruptedEvolution& ev) {
  require_model(ev, "spectral_report");
  require_admissible(ev.delta_t(), "spectral_report");
  SpectralReport rep;
  rep.delta_t = ev.delta_t();
  rep.tau = std::tan(rep.delta_t);
  const double t2 = rep.tau * rep.tau;
  rep.sin_phi = (t2 - 2.0) / (t2 + 2.0);
  rep.cos_phi = 4.0 * rep.tau / (kSqrt2 * (t2 + 2.0));
  const double c = std::cos(rep.delta_t);
  rep.delta = c * c;

  Matrix a(2, 2);
  a << Complex(rep.sin_phi), Complex(rep.cos_phi),
      Complex(rep.delta * rep.cos_phi), Complex(-rep.delta * rep.sin_phi);
  rep.contraction = a;
  const Matrix a2 = a * a;
  rep.gram = a2.transpose() * a2;  // real entries, so transpose = adjoint

  const HermitianEig eig = hermitian_eig(rep.gram);
  rep.b1 = eig.eigenvalues(0);
  rep.b2 = eig.eigenvalues(1);
  rep.norm_B = std::max(rep.b1, rep.b2);
  rep.det_B = rep.gram.determinant().real();
  rep.trace_B = rep.gram.trace().real();
  rep.predicted_det = std::pow(rep.delta, 4.0);
  rep.predicted_trace =
      rep.sin_phi * rep.sin_phi * (1.0 + rep.predicted_det) +
      2.0 * rep.delta * rep.delta * rep.cos_phi * rep.cos_phi;
  return rep;
}

std::vector<PureState> fixed_point_check(const InterruptedEvolution& ev,
                                         double tol) {
  const Matrix w = step_operator(ev);
  const Matrix shifted = w - Matrix::Identity(w.rows(), w.cols());
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
  std::vector<PureState> fixed;
  // Singular values come out descending; the null directions are at the tail.
  for (Eigen::Index k = svd.singularValues().size() - 1; k >= 0; --k) {
    if (svd.singularValues()(k) > tol) break;
    fixed.push_back(PureState::normalized(svd.matrixV().col(k)));
  }
  return fixed;
}

std::vector<DiscrepancyEntry> limit_propagator_discrepancy(
    std::span<const double> t_grid) {
  const TwoQubitModel model = build_model();
  const Matrix h_cut = model.survival_projector * model.hamiltonian *
                       model.survival_projector;
  std::vector<DiscrepancyEntry> table;
  table.reserve(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      table.push_back({"zeno_limit_closed_form", i, j, 0.0, 0.0, -1.0});
  for (double t : t_grid) {
    const Matrix u = mat_exp_i_hermitian(h_cut, t);
    const Matrix ref = zeno_limit_closed_form(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double diff = std::abs(u(i, j) - ref(i, j));
        DiscrepancyEntry& e = table[static_cast<size_t>(3 * i + j)];
        if (diff > e.abs_diff) {
          e.computed = u(i, j).real();
          e.reference = ref(i, j).real();
          e.abs_diff = diff;
        }
      }
  }
  return table;
}

std::vector<DiscrepancyEntry> entangled_pattern_discrepancy(double delta_t) {
  require_admissible(delta_t, "entangled_pattern_discrepancy");
  const InterruptedEvolution ev = model_evolution(build_model(), delta_t);
  const Matrix computed = step_operator_entangled_basis(ev);
  const SpectralReport rep = spectral_report(ev);
  Matrix ref = Matrix::Zero(4, 4);
  ref(0, 0) = 1.0;
  ref(1, 1) = -rep.sin_phi;
  ref(1, 2) = -rep.cos_phi;
  ref(2, 1) = rep.delta * rep.cos_phi;
  ref(2, 2) = -rep.delta * rep.sin_phi;
  std::vector<DiscrepancyEntry> table;
  table.reserve(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      table.push_back({"entangled_basis_pattern", i, j, computed(i, j).real(),
                       ref(i, j).real(), std::abs(computed(i, j) - ref(i, j))});
  return table;
}

}  // namespace zeno

#include "zeno/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace zeno {

namespace {

constexpr long kChunkSize = 1024;  // fixed, so reductions ignore worker count

struct ChunkResult {
  long n_no_click = 0;
  std::vector<long> histogram;
  double fidelity_sum = 0.0;
  std::vector<Vector> survivor_states;  // in trajectory order, capped
};

TrajectoryOutcome run_one(const Matrix& u, const Matrix& p,
                          const Vector& psi0, long n_steps,
                          PhiloxStream& stream) {
  Vector state = psi0;
  for (long check = 0; check <= n_steps; ++check) {
    if (check > 0) state = u * state;
    Vector projected = p * state;
    const double q = projected.squaredNorm();
    if (stream.next_double() < q) {
      state = projected / std::sqrt(q);
    } else {
      Vector clicked = state - projected;
      return {check, PureState::normalized(clicked)};
    }
  }
  return {std::nullopt, PureState::normalized(state)};
}

}  // namespace

TrajectoryOutcome sample_trajectory(const InterruptedEvolution& ev,
                                    const PureState& psi0, long n_steps,
                                    PhiloxStream& stream) {
  if (psi0.dim() != ev.dim())
    throw std::invalid_argument(
        "sample_trajectory: state dimension does not match the evolution");
  if (n_steps < 0)
    throw std::invalid_argument("sample_trajectory: n_steps must be >= 0");
  return run_one(ev.propagator(), ev.survival_projector(), psi0.amplitudes(),
                 n_steps, stream);
}

int resolve_worker_count() {
  if (const char* env = std::getenv("ZENO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

McResult run_ensemble(const Matrix& hamiltonian,
                      const Matrix& survival_projector,
                      const McConfig& config) {
  if (config.n_trajectories < 1)
    throw std::invalid_argument("run_ensemble: n_trajectories must be >= 1");
  if (config.n_steps < 1)
    throw std::invalid_argument("run_ensemble: n_steps must be >= 1");
  const InterruptedEvolution ev(hamiltonian, survival_projector,
                                config.delta_t);
  if (config.initial_state.dim() != ev.dim())
    throw std::invalid_argument(
        "run_ensemble: initial state dimension does not match the evolution");
  const Matrix u = ev.propagator();
  const Matrix& p = ev.survival_projector();
  const Vector psi0 = config.initial_state.amplitudes();
  const bool want_fidelity = config.reference_state.has_value();
  const Vector reference =
      want_fidelity ? config.reference_state->amplitudes() : Vector();

  const long n = config.n_trajectories;
  const long n_chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkResult> chunks(static_cast<size_t>(n_chunks));
  std::atomic<long> next_chunk{0};

  auto worker = [&]() {
    for (;;) {
      const long c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      ChunkResult& out = chunks[static_cast<size_t>(c)];
      out.histogram.assign(static_cast<size_t>(config.n_steps) + 1, 0);
      const long lo = c * kChunkSize;
      const long hi = std::min(n, lo + kChunkSize);
      for (long k = lo; k < hi; ++k) {
        PhiloxStream stream(config.seed, static_cast<std::uint64_t>(k));
        TrajectoryOutcome outcome =
            run_one(u, p, psi0, config.n_steps, stream);
        if (outcome.clicked_at) {
          ++out.histogram[static_cast<size_t>(*outcome.clicked_at)];
        } else {
          ++out.n_no_click;
          if (want_fidelity)
            out.fidelity_sum +=
                std::norm(reference.dot(outcome.final_state.amplitudes()));
          if (static_cast<long>(out.survivor_states.size()) <
              config.survivor_sample_cap)
            out.survivor_states.push_back(outcome.final_state.amplitudes());
        }
      }
    }
  };

  const int n_workers =
      static_cast<int>(std::min<long>(resolve_worker_count(), n_chunks));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Sequential reduction in chunk order keeps the result independent of the
  // scheduling above.
  McResult result;
  result.n_trajectories = n;
  result.click_step_histogram.assign(static_cast<size_t>(config.n_steps) + 1,
                                     0);
  double fid_sum = 0.0, fid_comp = 0.0;  // Kahan over chunk sums
  for (const ChunkResult& chunk : chunks) {
    result.n_no_click += chunk.n_no_click;
    for (size_t i = 0; i < chunk.histogram.size(); ++i)
      result.click_step_histogram[i] += chunk.histogram[i];
    const double y = chunk.fidelity_sum - fid_comp;
    const double t = fid_sum + y;
    fid_comp = (t - fid_sum) - y;
    fid_sum = t;
    for (const Vector& s : chunk.survivor_states) {
      if (static_cast<long>(result.final_states_sample.size()) >=
          config.survivor_sample_cap)
        break;
      result.final_states_sample.push_back(PureState::normalized(s));
    }
  }
  result.no_click_fraction =
      static_cast<double>(result.n_no_click) / static_cast<double>(n);
  result.standard_error = std::sqrt(result.no_click_fraction *
                                    (1.0 - result.no_click_fraction) /
                                    static_cast<double>(n));
  if (want_fidelity && result.n_no_click > 0) {
    result.mean_survivor_fidelity =
        fid_sum / static_cast<double>(result.n_no_click);
    result.fidelity_defined = true;
  }
  return result;
}

}  // namespace zeno

#pragma once

// Stochastic unraveling of the measurement record: Born-rule sampling of the
// click / no-click outcome after every evolution period, and deterministic
// parallel ensemble statistics.
//
// Determinism contract: a fixed (seed, config) produces a bit-identical
// McResult for any worker count.  Trajectory k draws from Philox substream k;
// floating-point reductions run over fixed-size chunks combined in index
// order, and histogram counts are exact integers.

#include "zeno/engine.hpp"
#include "zeno/linalg.hpp"
#include "zeno/philox.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace zeno {

struct McConfig {
  std::uint64_t seed = 0;
  long n_trajectories = 1;
  long n_steps = 1;
  double delta_t = 0.7;
  PureState initial_state;
  // When set, the ensemble accumulates |<reference|final>|^2 over no-click
  // survivors (used for the frozen-state fidelity).
  std::optional<PureState> reference_state;
  long survivor_sample_cap = 1000;
};

struct TrajectoryOutcome {
  std::optional<long> clicked_at;  // check index 0..n_steps; empty = no click
  PureState final_state;  // survivor state, or the collapsed state at click
};

// One Born-rule trajectory.  The projective check runs before any evolution
// (check 0, catching initial amplitude on the clicked subspace) and then
// after each of the n_steps evolution periods.
TrajectoryOutcome sample_trajectory(const InterruptedEvolution& ev,
                                    const PureState& psi0, long n_steps,
                                    PhiloxStream& stream);

struct McResult {
  long n_trajectories = 0;
  long n_no_click = 0;
  double no_click_fraction = 0.0;
  double standard_error = 0.0;  // sqrt(p (1-p) / N)
  // counts of first-click check index; length n_steps + 1 (index 0 is the
  // pre-evolution check).  n_no_click + sum(histogram) == n_trajectories.
  std::vector<long> click_step_histogram;
  std::vector<PureState> final_states_sample;  // first survivors, capped
  double mean_survivor_fidelity = 0.0;         // defined iff fidelity_defined
  bool fidelity_defined = false;
};

// Runs config.n_trajectories independent trajectories of the evolution
// (hamiltonian, survival_projector, config.delta_t).  Worker count comes
// from the ZENO_THREADS environment variable when set, otherwise from the
// hardware; the result is invariant to it.
McResult run_ensemble(const Matrix& hamiltonian,
                      const Matrix& survival_projector,
                      const McConfig& config);

// Worker-count resolution used by run_ensemble (exposed for the CLI).
int resolve_worker_count();

}  // namespace zeno

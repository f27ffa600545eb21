#pragma once

// Pure-state two-qubit entanglement measures and the entanglement profile of
// the frequent-measurement limit trajectory.

#include "zeno/linalg.hpp"

#include <span>
#include <vector>

namespace zeno {

// C = 2 |a d - b c| for amplitudes (a, b, c, d) in the fixed basis ordering.
// 0 for product states, 1 for Bell states.
double concurrence(const PureState& psi);

// Binary entropy in bits with the 0 log 0 := 0 convention; the argument is
// clamped to [0, 1] against numerical noise at pure points.
double binary_entropy(double p);

// Base-2 von Neumann entropy of the reduced state of the first subsystem.
// Equals binary_entropy((1 + sqrt(1 - C^2)) / 2) for C = concurrence(psi).
double entanglement_entropy(const PureState& psi);

struct EntanglementSample {
  double time;
  double concurrence;
  double entropy;
};

struct EntanglementProfile {
  std::vector<EntanglementSample> samples;
  double argmax_time = 0.0;
  double max_concurrence = 0.0;
};

// Concurrence and entropy along the limit trajectory exp(i P H P t)|00> of
// the photon + atom model.  The grid must be ascending within [0, pi].
EntanglementProfile zeno_entanglement_profile(std::span<const double> t_grid);

}  // namespace zeno

#pragma once

// The photon + atom system: product basis, Bell states, the combined
// Hamiltonian sigma_y (x) I - I (x) sigma_y, its product propagator, the
// survival projector orthogonal to the absorption state |11>, and the
// delta_t-dependent entangled basis used by the spectral analysis.
//
// Basis ordering is fixed globally as |00>, |01>, |10>, |11> with the first
// tensor factor the photon and the second the atom.

#include "zeno/linalg.hpp"

#include <array>

namespace zeno {

inline constexpr int kBasis00 = 0;
inline constexpr int kBasis01 = 1;
inline constexpr int kBasis10 = 2;
inline constexpr int kBasis11 = 3;

// sigma_y = [[0, -i], [i, 0]], so exp(i*sigma_y*t) is a real rotation.
Matrix pauli_y();

// exp(i*sigma_y*t) = [[cos t, sin t], [-sin t, cos t]].
Matrix single_qubit_rotation(double t);

PureState basis_state(int index);

enum class BellSign { plus, minus };

// (|01> +/- |10>)/sqrt(2).
PureState bell_state(BellSign sign);

struct TwoQubitModel {
  Matrix hamiltonian;         // 4x4 Hermitian, sigma_y (x) I - I (x) sigma_y
  Matrix survival_projector;  // I - |11><11|, Hermitian idempotent, trace 3
  PureState explosion_state;  // |11>
  double round_trip_scale;    // T = pi/2
};

TwoQubitModel build_model();

// exp(i*H*t) assembled as the product of single-qubit rotations,
// kron(R(t), R(-t)); agrees with the generic Hermitian exponential of H.
Matrix product_propagator(double t);

// Distance from delta_t to the nearest multiple of pi/2.
double distance_to_half_pi_grid(double delta_t);

// True when delta_t falls within `window` of some k*pi/2 (k = 0, 1, ...),
// where tan(delta_t) degenerates and the closed forms below break down.
bool is_excluded_delta_t(double delta_t, double window = 1e-9);

struct EntangledBasis {
  double delta_t;
  double tau;    // tan(delta_t)
  double alpha;  // |tau| / sqrt(2 tau^2 + 4)
  double beta;   // 1 / sqrt(tau^2 + 2)
  std::array<PureState, 4> vectors;  // orthonormal; [0] = Psi+, [3] = |11>
};

// The measurement-adapted orthonormal basis
//   Psi1 = Psi+,
//   Psi2 = alpha ((2/tau)|00> + sqrt(2) Psi-),
//   Psi3 = beta  (-tau |00>   + sqrt(2) Psi-),
//   Psi4 = |11>.
// Throws for delta_t inside the exclusion window around k*pi/2.
EntangledBasis entangled_basis(double delta_t);

}  // namespace zeno

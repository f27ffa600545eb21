#include "zeno/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zeno {

namespace {
constexpr double kPi = std::numbers::pi;
}

Matrix pauli_y() {
  Matrix sy(2, 2);
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return sy;
}

Matrix single_qubit_rotation(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Matrix r(2, 2);
  r << Complex(c), Complex(s), Complex(-s), Complex(c);
  return r;
}

PureState basis_state(int index) {
  if (index < 0 || index > 3)
    throw std::invalid_argument("basis_state: index out of range [0, 3]");
  Vector v = Vector::Zero(4);
  v(index) = 1.0;
  return PureState(std::move(v));
}

PureState bell_state(BellSign sign) {
  Vector v = Vector::Zero(4);
  const double a = 1.0 / std::sqrt(2.0);
  v(kBasis01) = a;
  v(kBasis10) = (sign == BellSign::plus) ? a : -a;
  return PureState(std::move(v));
}

TwoQubitModel build_model() {
  const Matrix sy = pauli_y();
  const Matrix id2 = Matrix::Identity(2, 2);
  Matrix h = kron(sy, id2) - kron(id2, sy);
  Matrix p = Matrix::Identity(4, 4) - projector_from_state(basis_state(kBasis11));
  return TwoQubitModel{std::move(h), std::move(p), basis_state(kBasis11),
                       kPi / 2.0};
}

Matrix product_propagator(double t) {
  return kron(single_qubit_rotation(t), single_qubit_rotation(-t));
}

double distance_to_half_pi_grid(double delta_t) {
  return std::abs(std::remainder(delta_t, kPi / 2.0));
}

bool is_excluded_delta_t(double delta_t, double window) {
  return distance_to_half_pi_grid(delta_t) < window;
}

EntangledBasis entangled_basis(double delta_t) {
  if (is_excluded_delta_t(delta_t))
    throw std::invalid_argument(
        "entangled_basis: delta_t = " + std::to_string(delta_t) +
        " lies within 1e-9 of the excluded set {k*pi/2: k = 0, 1, ...}");
  const double tau = std::tan(delta_t);
  const double alpha = std::abs(tau) / std::sqrt(2.0 * tau * tau + 4.0);
  const double beta = 1.0 / std::sqrt(tau * tau + 2.0);
  const Vector e00 = basis_state(kBasis00).amplitudes();
  const Vector psim = bell_state(BellSign::minus).amplitudes();
  Vector v2 = alpha * ((2.0 / tau) * e00 + std::sqrt(2.0) * psim);
  Vector v3 = beta * (-tau * e00 + std::sqrt(2.0) * psim);
  return EntangledBasis{
      delta_t, tau, alpha, beta,
      {bell_state(BellSign::plus), PureState::normalized(v2),
       PureState::normalized(v3), basis_state(kBasis11)}};
}

}  // namespace zeno

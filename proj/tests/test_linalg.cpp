#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zeno/linalg.hpp"
#include "zeno/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace zeno;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("mat_mul: identity, involution, dimension checks") {
  std::mt19937_64 rng(11);
  const Matrix m = oracle::random_matrix(rng, 4);
  CHECK(max_abs(mat_mul(Matrix::Identity(4, 4), m) - m) == 0.0);

  const Matrix sy = pauli_y();
  CHECK(max_abs(mat_mul(sy, sy) - Matrix::Identity(2, 2)) <= 1e-15);

  CHECK_THROWS_AS(mat_mul(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("mat_mul: squared step operator matches the elementwise oracle") {
  const TwoQubitModel model = build_model();
  const Matrix w = model.survival_projector *
                   mat_exp_i_hermitian(model.hamiltonian, 0.7) *
                   model.survival_projector;
  const Matrix via_lib = mat_mul(w, w);
  const Matrix via_oracle = oracle::naive_mat_mul(w, w);
  CHECK(max_abs(via_lib - via_oracle) <= 1e-14);
}

TEST_CASE("adjoint: Hermitian fixed points and unitarity check") {
  CHECK(max_abs(adjoint(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)) ==
        0.0);
  CHECK(max_abs(adjoint(pauli_y()) - pauli_y()) == 0.0);

  const Matrix u = mat_exp_i_hermitian(build_model().hamiltonian, 0.3);
  CHECK(max_abs(mat_mul(adjoint(u), u) - Matrix::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("kron: identities and basis action") {
  CHECK(max_abs(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) -
                Matrix::Identity(4, 4)) == 0.0);

  // (sigma_y (x) I - I (x) sigma_y)|00> = i|10> - i|01>
  const Matrix h = kron(pauli_y(), Matrix::Identity(2, 2)) -
                   kron(Matrix::Identity(2, 2), pauli_y());
  Vector expect = Vector::Zero(4);
  expect(kBasis10) = Complex(0, 1);
  expect(kBasis01) = Complex(0, -1);
  CHECK((h * basis_state(kBasis00).amplitudes() - expect).norm() <= 1e-15);

  // At a half turn both rotation factors are -I, so the product is I.
  const Matrix u =
      kron(single_qubit_rotation(kPi), single_qubit_rotation(-kPi));
  CHECK(max_abs(u - Matrix::Identity(4, 4)) <= 1e-15);
}

TEST_CASE("kron: mixed-product and associativity properties") {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 50; ++iter) {
    const Matrix a = oracle::random_matrix(rng, 2);
    const Matrix b = oracle::random_matrix(rng, 2);
    const Matrix c = oracle::random_matrix(rng, 2);
    const Matrix d = oracle::random_matrix(rng, 2);
    CHECK(max_abs(kron(a, b) * kron(c, d) - kron(Matrix(a * c), Matrix(b * d))) <=
          1e-12);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12);
  }
}

TEST_CASE("hermitian_eig: fixed spectra") {
  const HermitianEig sy = hermitian_eig(pauli_y());
  CHECK(sy.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(sy.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));

  // Differences of the single-qubit eigenvalues +/-1 give (-2, 0, 0, 2).
  const TwoQubitModel model = build_model();
  const HermitianEig h = hermitian_eig(model.hamiltonian);
  const double expected_h[] = {-2.0, 0.0, 0.0, 2.0};
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(h.eigenvalues(k) - expected_h[k]) <= 1e-12);

  const Matrix h_cut = model.survival_projector * model.hamiltonian *
                       model.survival_projector;
  const HermitianEig cut = hermitian_eig(h_cut);
  const double expected_cut[] = {-std::numbers::sqrt2, 0.0, 0.0,
                                 std::numbers::sqrt2};
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(cut.eigenvalues(k) - expected_cut[k]) <= 1e-12);

  // Restricted to the three-dimensional survival subspace the annihilated
  // direction drops out and the spectrum is (-sqrt2, 0, sqrt2).
  const HermitianEig restricted = hermitian_eig(h_cut.block(0, 0, 3, 3));
  const double expected_restricted[] = {-std::numbers::sqrt2, 0.0,
                                        std::numbers::sqrt2};
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(restricted.eigenvalues(k) - expected_restricted[k]) <=
          1e-12);
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("hermitian_eig: reconstruction and orthonormality on random input") {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix a = oracle::random_hermitian(rng, 4);
    const HermitianEig eig = hermitian_eig(a);
    const Matrix recon = eig.eigenvectors *
                         eig.eigenvalues.cast<Complex>().asDiagonal() *
                         eig.eigenvectors.adjoint();
    CHECK(operator_norm(recon - a) <= 1e-10);
    CHECK(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                  Matrix::Identity(4, 4)) <= 1e-11);
    for (int k = 1; k < 4; ++k)
      CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
  }
}

TEST_CASE("mat_exp_i_hermitian: closed forms") {
  std::mt19937_64 rng(14);
  const Matrix h = oracle::random_hermitian(rng, 4);
  CHECK(max_abs(mat_exp_i_hermitian(h, 0.0) - Matrix::Identity(4, 4)) <=
        1e-14);

  // exp(i sigma_y t) = cos(t) I + i sin(t) sigma_y, evaluated entrywise.
  for (double t : {0.3, 1.0, 2.5}) {
    const Matrix direct = mat_exp_i_hermitian(pauli_y(), t);
    const Matrix formula = std::cos(t) * Matrix::Identity(2, 2) +
                           Complex(0, 1) * std::sin(t) * pauli_y();
    CHECK(max_abs(direct - formula) <= 1e-13);
    CHECK(max_abs(direct - single_qubit_rotation(t)) <= 1e-13);
  }

  // Both qubits complete a quarter turn: |00> lands on -|11>.
  const Matrix u = mat_exp_i_hermitian(build_model().hamiltonian, kPi / 2.0);
  Vector expect = Vector::Zero(4);
  expect(kBasis11) = -1.0;
  CHECK((u * basis_state(kBasis00).amplitudes() - expect).norm() <= 1e-13);
}

TEST_CASE("mat_exp_i_hermitian: unitarity across a random suite") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix h = oracle::random_hermitian(rng, 4);
    const Matrix u = mat_exp_i_hermitian(h, time(rng));
    CHECK(operator_norm(u.adjoint() * u - Matrix::Identity(4, 4)) <= 1e-11);
    CHECK(std::abs(operator_norm(u) - 1.0) <= 1e-11);
  }
}

TEST_CASE("operator_norm: identity, rotations, diagonal contraction") {
  CHECK(operator_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0));

  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int iter = 0; iter < 20; ++iter)
    CHECK(std::abs(operator_norm(single_qubit_rotation(angle(rng))) - 1.0) <=
          1e-12);

  Matrix a_delta = Matrix::Zero(2, 2);
  a_delta(0, 0) = 1.0;
  a_delta(1, 1) = -0.5;
  CHECK(operator_norm(a_delta) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projector_from_state: basis and Bell projectors") {
  const Matrix p00 = projector_from_state(basis_state(kBasis00));
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  CHECK(max_abs(p00 - expect) == 0.0);

  const Matrix pp = projector_from_state(bell_state(BellSign::plus));
  for (int i : {kBasis01, kBasis10})
    for (int j : {kBasis01, kBasis10})
      CHECK(std::abs(pp(i, j) - Complex(0.5)) <= 1e-15);
  CHECK(std::abs(pp(kBasis00, kBasis00)) == 0.0);
  CHECK(std::abs(pp.trace().real() - 1.0) <= 1e-15);

  // Idempotence within construction tolerance.
  CHECK(max_abs(pp * pp - pp) <= 1e-15);
  CHECK(is_hermitian(pp));

  CHECK_THROWS_AS(PureState::normalized(Vector::Zero(4)),
                  std::invalid_argument);
}

TEST_CASE("partial_trace: product and maximally entangled reductions") {
  const Matrix rho00 = projector_from_state(basis_state(kBasis00));
  const Matrix red = partial_trace(rho00, Subsystem::first);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK(max_abs(red - expect) <= 1e-15);

  const Matrix rho_bell = projector_from_state(bell_state(BellSign::plus));
  for (Subsystem keep : {Subsystem::first, Subsystem::second})
    CHECK(max_abs(partial_trace(rho_bell, keep) -
                  0.5 * Matrix::Identity(2, 2)) <= 1e-15);

  CHECK_THROWS_AS(partial_trace(Matrix::Identity(2, 2), Subsystem::first),
                  std::invalid_argument);
}

TEST_CASE("partial_trace: spectrum matches the concurrence relation") {
  // psi = cos(theta)|00> + sin(theta) (|01> - |10>)/sqrt(2) at theta = pi/4:
  // reduced eigenvalues are (1 +/- sqrt(1 - C^2))/2 with C = sin^2(theta).
  const double theta = kPi / 4.0;
  Vector v = Vector::Zero(4);
  v(kBasis00) = std::cos(theta);
  v(kBasis01) = std::sin(theta) / std::numbers::sqrt2;
  v(kBasis10) = -std::sin(theta) / std::numbers::sqrt2;
  const PureState psi(v);

  const double c = std::sin(theta) * std::sin(theta);  // concurrence oracle
  const double gap = std::sqrt(1.0 - c * c);
  const Matrix red =
      partial_trace(projector_from_state(psi), Subsystem::first);
  const HermitianEig eig = hermitian_eig(red);
  CHECK(eig.eigenvalues(0) ==
        doctest::Approx((1.0 - gap) / 2.0).epsilon(1e-10));
  CHECK(eig.eigenvalues(1) ==
        doctest::Approx((1.0 + gap) / 2.0).epsilon(1e-10));
}

TEST_CASE("partial_trace: random pure states give unit-trace PSD reductions") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const PureState psi = oracle::random_pure_state(rng, 4);
    for (Subsystem keep : {Subsystem::first, Subsystem::second}) {
      const Matrix red = partial_trace(projector_from_state(psi), keep);
      const HermitianEig eig = hermitian_eig(red);
      double sum = 0.0;
      for (int k = 0; k < 2; ++k) {
        CHECK(eig.eigenvalues(k) >= -1e-10);
        CHECK(eig.eigenvalues(k) <= 1.0 + 1e-10);
        sum += eig.eigenvalues(k);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("PureState: normalization contract") {
  Vector v = Vector::Zero(4);
  v(0) = 0.5;
  CHECK_THROWS_AS(PureState{v}, std::invalid_argument);
  const PureState fixed = PureState::normalized(v);
  CHECK(std::abs(fixed.amplitudes().norm() - 1.0) <= 1e-15);
  RawVector raw{Vector(0.25 * fixed.amplitudes())};
  CHECK(raw.squared_norm() == doctest::Approx(0.0625));
  CHECK(std::abs(raw.to_pure().amplitudes().norm() - 1.0) <= 1e-15);
}

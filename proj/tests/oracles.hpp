#pragma once

// Test-only oracles, independent of the library code paths they check:
// elementwise products, naive matrix powers, and seeded random generators
// for Hermitian matrices, unitaries and pure states.

#include "zeno/linalg.hpp"

#include <cstdint>
#include <random>

namespace oracle {

using zeno::Complex;
using zeno::Matrix;
using zeno::Vector;

// Elementwise triple-loop product.
inline Matrix naive_mat_mul(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        out(i, j) += a(i, k) * b(k, j);
  return out;
}

// Plain iterated product m * m * ... * m.
inline Matrix naive_power(const Matrix& m, long n) {
  Matrix acc = Matrix::Identity(m.rows(), m.cols());
  for (long k = 0; k < n; ++k) acc = naive_mat_mul(acc, m);
  return acc;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix m = random_matrix(rng, dim);
  return (m + m.adjoint()) / 2.0;
}

// Haar-ish unitary via Gram-Schmidt (QR) of a Gaussian matrix.
inline Matrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix m = random_matrix(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  return q;
}

inline zeno::PureState random_pure_state(std::mt19937_64& rng,
                                         Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return zeno::PureState::normalized(v);
}

}  // namespace oracle

#pragma once

// Dense complex linear algebra at small fixed dimension (2..8): checked
// products, Hermitian eigendecomposition, matrix exponentials of Hermitian
// generators, operator norm, Kronecker products and partial traces.
//
// Free functions over Eigen types; everything is pure and thread-safe.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace zeno {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Construction-level and derived-quantity tolerances used throughout.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kDerivedTol = 1e-10;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol = kConstructionTol) {
  if (m.rows() != m.cols()) return false;
  const auto& d = m.derived();
  return (d - d.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_idempotent(const Eigen::MatrixBase<Derived>& m,
                   double tol = kConstructionTol) {
  if (m.rows() != m.cols()) return false;
  const auto& d = m.derived();
  return ((d * d).eval() - d).cwiseAbs().maxCoeff() <= tol;
}

// Checked matrix product.
inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul: dimension mismatch (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
  return a * b;
}

inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

// Kronecker product with the block convention
// (a (x) b)[i*rb + k][j*cb + l] = a[i][j] * b[k][l].
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Matrix out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * rb, j * cb, rb, cb) = Complex(a(i, j)) * b.derived();
  return out;
}

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns, a * v_k = lambda_k * v_k
};

inline HermitianEig hermitian_eig(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (!a.allFinite())
    throw std::invalid_argument("hermitian_eig: matrix has non-finite entries");
  if (!is_hermitian(a))
    throw std::invalid_argument(
        "hermitian_eig: matrix is not Hermitian within 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// exp(i*h*t) for Hermitian h, via eigendecomposition; the result is unitary.
inline Matrix mat_exp_i_hermitian(const Matrix& h, double t) {
  const HermitianEig eig = hermitian_eig(h);
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex(0.0, eig.eigenvalues(k) * t));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

// Largest singular value, as sqrt of the top eigenvalue of a^dag a.
inline double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

// Normalized state vector. Unnormalized vectors appear only transiently as
// projector outputs and are carried as RawVector instead.
class PureState {
 public:
  explicit PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.size() == 0)
      throw std::invalid_argument("PureState: empty amplitude vector");
    if (!amp_.allFinite())
      throw std::invalid_argument("PureState: non-finite amplitudes");
    if (std::abs(amp_.norm() - 1.0) > kConstructionTol)
      throw std::invalid_argument(
          "PureState: vector is not normalized within 1e-12 (norm = " +
          std::to_string(amp_.norm()) + ")");
  }

  // Rescales an arbitrary nonzero vector to unit norm.
  static PureState normalized(const Vector& v) {
    const double n = v.norm();
    if (!v.allFinite() || n < 1e-300)
      throw std::invalid_argument("PureState::normalized: zero vector");
    return PureState(Vector(v / n));
  }

  Eigen::Index dim() const { return amp_.size(); }
  const Vector& amplitudes() const { return amp_; }
  const Complex& operator[](Eigen::Index i) const { return amp_(i); }

  Complex inner(const PureState& other) const {
    return amp_.dot(other.amp_);  // conjugates *this
  }
  double overlap2(const PureState& other) const {
    return std::norm(inner(other));
  }

 private:
  Vector amp_;
};

// Possibly sub-normalized vector (e.g. a projected state before
// renormalization).  norm is in [0, 1] for projector outputs.
struct RawVector {
  Vector amplitudes;
  double squared_norm() const { return amplitudes.squaredNorm(); }
  PureState to_pure() const { return PureState::normalized(amplitudes); }
};

// |v><v| for a normalized state: Hermitian, idempotent, trace one.
inline Matrix projector_from_state(const PureState& v) {
  return v.amplitudes() * v.amplitudes().adjoint();
}

enum class Subsystem { first = 0, second = 1 };

// Reduced 2x2 density matrix of a two-qubit density matrix.
inline Matrix partial_trace(const Matrix& rho, Subsystem keep) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("partial_trace: expected a 4x4 density matrix");
  if (!is_hermitian(rho, 1e-10))
    throw std::invalid_argument("partial_trace: density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("partial_trace: density matrix trace is not 1");
  Matrix red = Matrix::Zero(2, 2);
  if (keep == Subsystem::first) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) red(i, j) += rho(2 * i + k, 2 * j + k);
  } else {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i) red(k, l) += rho(2 * i + k, 2 * i + l);
  }
  return red;
}

}  // namespace zeno

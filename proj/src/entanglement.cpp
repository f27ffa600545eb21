#include "zeno/entanglement.hpp"

#include "zeno/engine.hpp"
#include "zeno/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zeno {

double concurrence(const PureState& psi) {
  if (psi.dim() != 4)
    throw std::invalid_argument("concurrence: expected a 4-dimensional state");
  const Vector& a = psi.amplitudes();
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

double binary_entropy(double p) {
  p = std::clamp(p, 0.0, 1.0);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

double entanglement_entropy(const PureState& psi) {
  if (psi.dim() != 4)
    throw std::invalid_argument(
        "entanglement_entropy: expected a 4-dimensional state");
  const Matrix reduced =
      partial_trace(projector_from_state(psi), Subsystem::first);
  const HermitianEig eig = hermitian_eig(reduced);
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = std::clamp(eig.eigenvalues(k), 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

EntanglementProfile zeno_entanglement_profile(std::span<const double> t_grid) {
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0 || t_grid[i] > std::numbers::pi + 1e-12 ||
        (i > 0 && t_grid[i] < t_grid[i - 1]))
      throw std::invalid_argument(
          "zeno_entanglement_profile: grid must be ascending within [0, pi]");
  }
  const TwoQubitModel model = build_model();
  const Matrix h_cut = model.survival_projector * model.hamiltonian *
                       model.survival_projector;
  // One eigendecomposition; each grid point is then a cheap phase rotation.
  const HermitianEig eig = hermitian_eig(h_cut);
  const Vector psi0_eig =
      eig.eigenvectors.adjoint() * basis_state(kBasis00).amplitudes();

  EntanglementProfile profile;
  profile.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    Vector coeff(psi0_eig.size());
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
      coeff(k) = std::exp(Complex(0.0, eig.eigenvalues(k) * t)) * psi0_eig(k);
    const PureState psi = PureState::normalized(eig.eigenvectors * coeff);
    const double c = concurrence(psi);
    profile.samples.push_back({t, c, entanglement_entropy(psi)});
    if (c > profile.max_concurrence) {
      profile.max_concurrence = c;
      profile.argmax_time = t;
    }
  }
  return profile;
}

}  // namespace zeno

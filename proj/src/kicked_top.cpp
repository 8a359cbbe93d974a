#include "kicktop/kicked_top.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kicktop {

CVector torsion_phases(const SpinSystem& system, double kappa0) {
  if (system.twice_j() == 0) {
    throw std::invalid_argument("torsion undefined for j = 0 (divides by 2j)");
  }
  if (!std::isfinite(kappa0)) {
    throw std::invalid_argument("kappa0 must be finite");
  }
  const int d = system.dim();
  const double scale = kappa0 / static_cast<double>(system.twice_j());
  CVector phases(d);
  for (int k = 0; k < d; ++k) {
    const double m = system.m(k);
    phases(k) = std::polar(1.0, -scale * m * m);
  }
  return phases;
}

FloquetOperator::FloquetOperator(SpinSystem system, double kappa0, CVector torsion_diagonal, CMatrix rotation)
    : system_(system),
      kappa0_(kappa0),
      torsion_(std::move(torsion_diagonal)),
      rotation_(std::move(rotation)),
      unitary_(torsion_.asDiagonal() * rotation_) {
  if (torsion_.size() != system_.dim() || rotation_.rows() != system_.dim() || rotation_.cols() != system_.dim()) {
    throw std::invalid_argument("Floquet factors do not match the spin dimension");
  }
}

FloquetOperator build_floquet(const TopParams& params) {
  CVector torsion = torsion_phases(params.system, params.kappa0);
  CMatrix rotation = rotation_operator(params.system, Axis::unit_y(), std::numbers::pi / 2.0);
  return FloquetOperator(params.system, params.kappa0, std::move(torsion), std::move(rotation));
}

DensityState evolve(const DensityState& rho, const FloquetOperator& floquet, int steps) {
  if (steps < 0) {
    throw std::invalid_argument("evolve: steps must be non-negative");
  }
  if (rho.dim() != floquet.system().dim()) {
    throw std::invalid_argument("evolve: state and propagator dimensions differ");
  }
  const CMatrix& u = floquet.unitary();
  CMatrix m = rho.matrix();
  for (int s = 0; s < steps; ++s) {
    m = u * m * u.adjoint();
  }
  return DensityState::from_matrix_unchecked(std::move(m));
}

}  // namespace kicktop

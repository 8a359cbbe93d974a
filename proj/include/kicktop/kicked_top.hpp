#pragma once

#include "kicktop/spin.hpp"
#include "kicktop/state.hpp"

namespace kicktop {

struct TopParams {
  SpinSystem system;
  double kappa0 = 0.0;  ///< kick strength
};

/// Diagonal of the torsion T = exp(-i kappa0 J_z^2 / 2j) in the J_z basis.
/// Throws for j = 0.
CVector torsion_phases(const SpinSystem& system, double kappa0);

/// One-period propagator U = T R of the kicked top, with the torsion T and
/// the rotation R = exp(-i J_y pi/2) kept alongside the product.
class FloquetOperator {
 public:
  FloquetOperator(SpinSystem system, double kappa0, CVector torsion_diagonal, CMatrix rotation);

  const SpinSystem& system() const { return system_; }
  double kappa0() const { return kappa0_; }
  const CVector& torsion_diagonal() const { return torsion_; }
  CMatrix torsion() const { return torsion_.asDiagonal(); }
  const CMatrix& rotation() const { return rotation_; }
  const CMatrix& unitary() const { return unitary_; }

 private:
  SpinSystem system_;
  double kappa0_;
  CVector torsion_;
  CMatrix rotation_;
  CMatrix unitary_;
};

FloquetOperator build_floquet(const TopParams& params);

/// U^steps rho (U^dagger)^steps. One conjugation per step.
DensityState evolve(const DensityState& rho, const FloquetOperator& floquet, int steps);

}  // namespace kicktop

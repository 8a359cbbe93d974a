#pragma once

#include "kicktop/spin.hpp"

namespace kicktop {

/// Density matrix of the top, always stored in the J_z eigenbasis.
///
/// from_matrix() validates: Hermitian within 1e-12, unit trace within 1e-12,
/// smallest eigenvalue above -1e-10. Operations that preserve these
/// properties by construction (unitary conjugation, dephasing) go through
/// from_matrix_unchecked() and skip the eigenvalue check.
class DensityState {
 public:
  static DensityState from_matrix(CMatrix matrix);
  static DensityState from_matrix_unchecked(CMatrix matrix);
  /// |psi><psi|; psi must have unit norm within 1e-12.
  static DensityState pure(const CVector& psi);
  static DensityState maximally_mixed(const SpinSystem& system);

  const CMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  SpinSystem system() const { return SpinSystem::from_twice_j(dim() - 1); }

  /// Throws NumericalIntegrityError when an invariant is broken.
  void validate() const;

 private:
  explicit DensityState(CMatrix matrix) : matrix_(std::move(matrix)) {}
  CMatrix matrix_;
};

}  // namespace kicktop

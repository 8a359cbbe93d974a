#include "kicktop/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "kicktop/error.hpp"

namespace kicktop {

DensityState DensityState::from_matrix(CMatrix matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  DensityState state(std::move(matrix));
  state.validate();
  return state;
}

DensityState DensityState::from_matrix_unchecked(CMatrix matrix) {
  return DensityState(std::move(matrix));
}

DensityState DensityState::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (psi.size() == 0 || std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("pure state vector must have unit norm, |psi| = " + std::to_string(norm));
  }
  return DensityState(psi * psi.adjoint());
}

DensityState DensityState::maximally_mixed(const SpinSystem& system) {
  const int d = system.dim();
  return DensityState(CMatrix::Identity(d, d) / static_cast<double>(d));
}

void DensityState::validate() const {
  if (!matrix_.allFinite()) {
    throw NumericalIntegrityError("density matrix has non-finite entries");
  }
  const double herm = max_abs(matrix_ - matrix_.adjoint());
  if (herm > 1e-12) {
    throw NumericalIntegrityError("density matrix not Hermitian, deviation " + std::to_string(herm));
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw NumericalIntegrityError("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  const CMatrix herm_part = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm_part, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalIntegrityError("eigensolver failed while validating density matrix");
  }
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw NumericalIntegrityError("density matrix has negative eigenvalue " +
                                  std::to_string(eig.eigenvalues().minCoeff()));
  }
}

}  // namespace kicktop

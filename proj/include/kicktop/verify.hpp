#pragma once

#include <string>
#include <vector>

#include "kicktop/spin.hpp"

namespace kicktop {

enum class CheckKind {
  Identity,  ///< residual is a max-norm deviation from an exact relation
  Scaling,   ///< residual is |log10(observed ratio) - log10(expected ratio)|
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  CheckKind kind = CheckKind::Identity;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  double max_identity_residual() const;
  const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
  std::vector<SpinSystem> systems{SpinSystem::from_twice_j(2), SpinSystem::from_twice_j(10),
                                  SpinSystem::from_twice_j(30)};
  /// Fault injection: build the torsion as exp(+i k Jz^2/2j).
  bool corrupt_torsion_sign = false;
};

/// Numerical check of the operator algebra the simulator relies on:
/// angular-momentum algebra, projector conjugation rules of the Floquet
/// factors, the [Jz^2, X_j] ladder identity, second-order accuracy of the
/// first-order torsion expansion, and the classical-map orbit structure.
VerifyReport run_verify(const VerifyOptions& options = {});

/// |x, m> basis whose relative phases make <x,m-1| (J_y - i J_z) |x,m> real
/// and positive; the first vector matches axis_basis(x).
CMatrix x_ladder_basis(const SpinSystem& system);

}  // namespace kicktop

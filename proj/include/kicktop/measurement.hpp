#pragma once

#include <optional>
#include <vector>

#include "kicktop/kicked_top.hpp"
#include "kicktop/spin.hpp"
#include "kicktop/state.hpp"

namespace kicktop {

enum class Conditioning {
  None,           ///< Bob alone (P_B)
  Dephased,       ///< Alice's unrecorded measurement applied as a channel (P_C)
  JointMarginal,  ///< sum over Alice's outcomes of the joint distribution
};

struct DistributionContext {
  Axis axis = Axis::unit_z();
  int t_beta = 0;
  std::optional<int> t_alpha;
  Conditioning conditioning = Conditioning::None;
};

/// Probabilities over the outcomes m = j, j-1, ..., -j of J.n.
struct OutcomeDistribution {
  std::vector<double> probs;
  DistributionContext context;

  /// Validates raw Born-rule values: entries in [-1e-12, 1e-15) are set to
  /// zero and the vector renormalized; anything more negative, above
  /// 1 + 1e-12, or a sum off by more than 1e-10 raises
  /// NumericalIntegrityError.
  static OutcomeDistribution from_probabilities(std::vector<double> raw, DistributionContext context = {});

  std::size_t size() const { return probs.size(); }
};

/// Rows are Bob's outcome b, columns Alice's outcome a.
struct JointDistribution {
  Eigen::MatrixXd p;

  std::vector<double> alice_marginal() const;  ///< sum over b
  std::vector<double> bob_marginal() const;    ///< sum over a
  double total() const { return p.sum(); }
};

/// A_m = |n,m><n,m| for m = j ... -j.
std::vector<CMatrix> projectors(const SpinSystem& system, const Axis& axis);

/// sum_m A_m rho A_m: drop the off-diagonal part of rho in the axis
/// eigenbasis. The result is stored back in the J_z basis.
DensityState dephase(const DensityState& rho, const AxisBasis& basis);
DensityState dephase(const DensityState& rho, const Axis& axis);

/// Born rule, probs[k] = <n,m_k| rho |n,m_k>.
OutcomeDistribution outcome_distribution(const DensityState& rho, const AxisBasis& basis);
OutcomeDistribution outcome_distribution(const DensityState& rho, const Axis& axis);

/// P_B(b; t_beta): Bob measures at t_beta with no earlier measurement.
OutcomeDistribution unconditional(const DensityState& rho0, const FloquetOperator& floquet, int t_beta,
                                  const Axis& axis_b);

/// P_C(b; t_beta, t_alpha): Alice measures J.a at t_alpha without recording,
/// Bob measures J.b at t_beta. Requires 0 <= t_alpha < t_beta.
OutcomeDistribution conditional(const DensityState& rho0, const FloquetOperator& floquet, int t_alpha,
                                int t_beta, const Axis& axis_a, const Axis& axis_b);

/// P(b, a; t_beta, t_alpha) = Tr[U A_a rho(t_alpha) A_a U^dagger B_b].
/// Alice outcomes with probability below 1e-14 contribute a zero column.
JointDistribution joint(const DensityState& rho0, const FloquetOperator& floquet, int t_alpha, int t_beta,
                        const Axis& axis_a, const Axis& axis_b);

}  // namespace kicktop

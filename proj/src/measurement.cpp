#include "kicktop/measurement.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kicktop/error.hpp"

namespace kicktop {

namespace {

constexpr double kClipTolerance = 1e-12;
constexpr double kSumTolerance = 1e-10;
constexpr double kRoundoffFloor = 1e-15;
constexpr double kNegligibleBranch = 1e-14;

void check_schedule(int t_alpha, int t_beta) {
  if (t_alpha < 0 || t_alpha >= t_beta) {
    throw std::invalid_argument("measurement times must satisfy 0 <= t_alpha < t_beta (got t_alpha=" +
                                std::to_string(t_alpha) + ", t_beta=" + std::to_string(t_beta) + ")");
  }
}

void check_dims(const DensityState& rho, int dim) {
  if (rho.dim() != dim) {
    throw std::invalid_argument("state dimension " + std::to_string(rho.dim()) + " does not match basis dimension " +
                                std::to_string(dim));
  }
}

}  // namespace

OutcomeDistribution OutcomeDistribution::from_probabilities(std::vector<double> raw, DistributionContext context) {
  if (raw.empty()) {
    throw std::invalid_argument("outcome distribution must be non-empty");
  }
  bool clipped = false;
  for (double& p : raw) {
    if (!std::isfinite(p) || p < -kClipTolerance || p > 1.0 + kClipTolerance) {
      throw NumericalIntegrityError("probability out of range: " + std::to_string(p));
    }
    if (p < kRoundoffFloor) {
      clipped = clipped || p != 0.0;
      p = 0.0;
    } else if (p > 1.0) {
      p = 1.0;
      clipped = true;
    }
  }
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw NumericalIntegrityError("probabilities sum to " + std::to_string(sum));
  }
  if (clipped) {
    for (double& p : raw) {
      p /= sum;
    }
  }
  return OutcomeDistribution{.probs = std::move(raw), .context = context};
}

std::vector<double> JointDistribution::alice_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(p.cols()));
  for (Eigen::Index a = 0; a < p.cols(); ++a) {
    out[static_cast<std::size_t>(a)] = p.col(a).sum();
  }
  return out;
}

std::vector<double> JointDistribution::bob_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(p.rows()));
  for (Eigen::Index b = 0; b < p.rows(); ++b) {
    out[static_cast<std::size_t>(b)] = p.row(b).sum();
  }
  return out;
}

std::vector<CMatrix> projectors(const SpinSystem& system, const Axis& axis) {
  const AxisBasis basis = axis_basis(system, axis);
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(basis.dim()));
  for (int k = 0; k < basis.dim(); ++k) {
    const CVector v = basis.vector(k);
    out.push_back(v * v.adjoint());
  }
  return out;
}

DensityState dephase(const DensityState& rho, const AxisBasis& basis) {
  check_dims(rho, basis.dim());
  const CMatrix& v = basis.vectors;
  const CMatrix in_axis = v.adjoint() * rho.matrix() * v;
  const CMatrix diagonal = in_axis.diagonal().real().cast<Complex>().asDiagonal();
  return DensityState::from_matrix_unchecked(v * diagonal * v.adjoint());
}

DensityState dephase(const DensityState& rho, const Axis& axis) {
  return dephase(rho, axis_basis(rho.system(), axis));
}

OutcomeDistribution outcome_distribution(const DensityState& rho, const AxisBasis& basis) {
  check_dims(rho, basis.dim());
  std::vector<double> probs(static_cast<std::size_t>(basis.dim()));
  for (int k = 0; k < basis.dim(); ++k) {
    const CVector v = basis.vector(k);
    probs[static_cast<std::size_t>(k)] = v.dot(rho.matrix() * v).real();
  }
  DistributionContext context;
  context.axis = basis.axis;
  return OutcomeDistribution::from_probabilities(std::move(probs), context);
}

OutcomeDistribution outcome_distribution(const DensityState& rho, const Axis& axis) {
  return outcome_distribution(rho, axis_basis(rho.system(), axis));
}

OutcomeDistribution unconditional(const DensityState& rho0, const FloquetOperator& floquet, int t_beta,
                                  const Axis& axis_b) {
  if (t_beta < 0) {
    throw std::invalid_argument("t_beta must be non-negative");
  }
  OutcomeDistribution out = outcome_distribution(evolve(rho0, floquet, t_beta), axis_b);
  out.context.t_beta = t_beta;
  out.context.conditioning = Conditioning::None;
  return out;
}

OutcomeDistribution conditional(const DensityState& rho0, const FloquetOperator& floquet, int t_alpha, int t_beta,
                                const Axis& axis_a, const Axis& axis_b) {
  check_schedule(t_alpha, t_beta);
  const SpinSystem system = floquet.system();
  const DensityState before = evolve(rho0, floquet, t_alpha);
  const DensityState after = dephase(before, axis_basis(system, axis_a));
  OutcomeDistribution out = outcome_distribution(evolve(after, floquet, t_beta - t_alpha), axis_basis(system, axis_b));
  out.context.t_beta = t_beta;
  out.context.t_alpha = t_alpha;
  out.context.conditioning = Conditioning::Dephased;
  return out;
}

JointDistribution joint(const DensityState& rho0, const FloquetOperator& floquet, int t_alpha, int t_beta,
                        const Axis& axis_a, const Axis& axis_b) {
  check_schedule(t_alpha, t_beta);
  const SpinSystem system = floquet.system();
  const int d = system.dim();
  const std::vector<CMatrix> alice = projectors(system, axis_a);
  const std::vector<CMatrix> bob = projectors(system, axis_b);
  const DensityState before = evolve(rho0, floquet, t_alpha);

  JointDistribution out{.p = Eigen::MatrixXd::Zero(d, d)};
  for (int a = 0; a < d; ++a) {
    const CMatrix& pa = alice[static_cast<std::size_t>(a)];
    if ((before.matrix() * pa).trace().real() < kNegligibleBranch) {
      continue;
    }
    const DensityState branch = DensityState::from_matrix_unchecked(pa * before.matrix() * pa);
    const DensityState later = evolve(branch, floquet, t_beta - t_alpha);
    for (int b = 0; b < d; ++b) {
      out.p(b, a) = (later.matrix() * bob[static_cast<std::size_t>(b)]).trace().real();
    }
  }
  if ((out.p.array() < -kClipTolerance).any()) {
    throw NumericalIntegrityError("joint distribution has a negative entry");
  }
  if (std::abs(out.total() - 1.0) > kSumTolerance) {
    throw NumericalIntegrityError("joint distribution sums to " + std::to_string(out.total()));
  }
  return out;
}

}  // namespace kicktop

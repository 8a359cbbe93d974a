#include "kicktop/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kicktop/error.hpp"

namespace kicktop {

namespace {

constexpr double kBoundSlack = 1e-10;

void require_same_length(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distributions have different lengths (" + std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()) + ")");
  }
}

// Clipped zeros stay exactly zero under the square root.
double safe_sqrt(double p) { return p > 0.0 ? std::sqrt(p) : 0.0; }

}  // namespace

double hellinger(std::span<const double> p, std::span<const double> q) {
  require_same_length(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = safe_sqrt(p[i]) - safe_sqrt(q[i]);
    acc += diff * diff;
  }
  return std::sqrt(0.5 * acc);
}

double hellinger(const OutcomeDistribution& p, const OutcomeDistribution& q) { return hellinger(p.probs, q.probs); }

double participation(std::span<const double> p) {
  double acc = 0.0;
  for (double x : p) {
    acc += x * x;
  }
  if (acc <= 0.0) {
    throw std::invalid_argument("participation ratio of an all-zero vector");
  }
  return 1.0 / acc;
}

double participation(const OutcomeDistribution& p) { return participation(p.probs); }

double delta(std::span<const double> p_c, std::span<const double> p_b) {
  require_same_length(p_c, p_b);
  return participation(p_c) - participation(p_b);
}

double delta(const OutcomeDistribution& p_c, const OutcomeDistribution& p_b) { return delta(p_c.probs, p_b.probs); }

double coherence_l1(const DensityState& rho, const AxisBasis& basis) {
  if (rho.dim() != basis.dim()) {
    throw std::invalid_argument("coherence_l1: state and basis dimensions differ");
  }
  const CMatrix in_axis = basis.vectors.adjoint() * rho.matrix() * basis.vectors;
  return in_axis.cwiseAbs().sum() - in_axis.diagonal().cwiseAbs().sum();
}

double coherence_l1(const DensityState& rho, const Axis& axis) {
  return coherence_l1(rho, axis_basis(rho.system(), axis));
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Hellinger:
      return "H";
    case Metric::Delta:
      return "Delta";
    case Metric::Coherence:
      return "C";
  }
  return "?";
}

void check_sample_bounds(const DistanceSample& s, const SpinSystem& system) {
  const double two_j = static_cast<double>(system.twice_j());
  const bool ok = std::isfinite(s.value_H) && std::isfinite(s.value_Delta) && std::isfinite(s.value_C) &&
                  s.value_H >= -kBoundSlack && s.value_H <= 1.0 + kBoundSlack &&
                  std::abs(s.value_Delta) <= two_j + kBoundSlack && s.value_C >= -kBoundSlack;
  if (!ok) {
    throw NumericalIntegrityError("metric out of bounds at t_alpha=" + std::to_string(s.t_alpha) +
                                  ", t_beta=" + std::to_string(s.t_beta) + ": H=" + std::to_string(s.value_H) +
                                  " Delta=" + std::to_string(s.value_Delta) + " C=" + std::to_string(s.value_C));
  }
}

std::vector<DistanceSample> distance_samples(const Scenario& scenario, const FloquetOperator& floquet, int n, int T) {
  if (n < 1) {
    throw std::invalid_argument("schedule offset n must be >= 1");
  }
  if (T < 0) {
    throw std::invalid_argument("averaging window T must be >= 0");
  }
  const SpinSystem system = floquet.system();
  const AxisBasis basis_a = axis_basis(system, scenario.axis_a);
  const AxisBasis basis_b =
      scenario.axis_b == scenario.axis_a ? basis_a : axis_basis(system, scenario.axis_b);

  // rho(t) for t = 0 .. n + T, one conjugation per step.
  std::vector<DensityState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(n + T) + 1);
  trajectory.push_back(scenario.rho0);
  for (int t = 1; t <= n + T; ++t) {
    trajectory.push_back(evolve(trajectory.back(), floquet, 1));
  }

  std::vector<DistanceSample> out;
  out.reserve(static_cast<std::size_t>(T) + 1);
  for (int t_alpha = 0; t_alpha <= T; ++t_alpha) {
    const int t_beta = t_alpha + n;
    const DensityState& before = trajectory[static_cast<std::size_t>(t_alpha)];
    const DensityState dephased = dephase(before, basis_a);
    const OutcomeDistribution p_c = outcome_distribution(evolve(dephased, floquet, n), basis_b);
    const OutcomeDistribution p_b = outcome_distribution(trajectory[static_cast<std::size_t>(t_beta)], basis_b);
    DistanceSample s{
        .t_beta = t_beta,
        .t_alpha = t_alpha,
        .value_H = hellinger(p_c, p_b),
        .value_Delta = delta(p_c, p_b),
        .value_C = coherence_l1(before, basis_a),
    };
    check_sample_bounds(s, system);
    out.push_back(s);
  }
  return out;
}

std::vector<DistanceSample> distance_samples(const Scenario& scenario, int n, int T) {
  return distance_samples(scenario, build_floquet(scenario.params), n, T);
}

AveragedDistance average(Metric metric, std::span<const DistanceSample> samples, int n, int T) {
  if (samples.empty()) {
    throw std::invalid_argument("cannot average an empty sample window");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const DistanceSample& s : samples) {
    double v = 0.0;
    switch (metric) {
      case Metric::Hellinger:
        v = s.value_H;
        break;
      case Metric::Delta:
        v = s.value_Delta;
        break;
      case Metric::Coherence:
        v = s.value_C;
        break;
    }
    sum += v;
    sum_sq += v * v;
  }
  const auto count = static_cast<double>(samples.size());
  return AveragedDistance{.metric = metric, .n = n, .T = T, .mean = sum / count, .second_moment = sum_sq / count};
}

AveragedDistance averaged_distance(Metric metric, const Scenario& scenario, int n, int T) {
  const std::vector<DistanceSample> samples = distance_samples(scenario, n, T);
  return average(metric, samples, n, T);
}

}  // namespace kicktop

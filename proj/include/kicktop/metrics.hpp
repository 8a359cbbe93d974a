#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "kicktop/kicked_top.hpp"
#include "kicktop/measurement.hpp"
#include "kicktop/state.hpp"

namespace kicktop {

/// Hellinger distance (1/sqrt 2) * || sqrt(p) - sqrt(q) ||_2, in [0, 1].
double hellinger(std::span<const double> p, std::span<const double> q);
double hellinger(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// Participation ratio 1 / sum p_k^2, in [1, len(p)].
double participation(std::span<const double> p);
double participation(const OutcomeDistribution& p);

/// W(P_C) - W(P_B).
double delta(std::span<const double> p_c, std::span<const double> p_b);
double delta(const OutcomeDistribution& p_c, const OutcomeDistribution& p_b);

/// l1 coherence: sum of |rho_km|, k != m, with rho written in the axis
/// eigenbasis. Independent of the eigenvector phases.
double coherence_l1(const DensityState& rho, const AxisBasis& basis);
double coherence_l1(const DensityState& rho, const Axis& axis);

enum class Metric { Hellinger, Delta, Coherence };

std::string_view metric_name(Metric metric);

/// Initial state, measurement axes and top parameters for one schedule
/// evaluation.
struct Scenario {
  TopParams params;
  DensityState rho0;
  Axis axis_a = Axis::unit_z();
  Axis axis_b = Axis::unit_z();
};

/// Disturbance for one (t_alpha, t_beta) pair. value_C is the coherence of
/// the state just before Alice measures.
struct DistanceSample {
  int t_beta = 0;
  int t_alpha = 0;
  double value_H = 0.0;
  double value_Delta = 0.0;
  double value_C = 0.0;
};

struct AveragedDistance {
  Metric metric = Metric::Delta;
  int n = 1;
  int T = 0;
  double mean = 0.0;
  double second_moment = 0.0;
};

/// Samples d(t_beta, t_beta - n) for t_beta = n, n+1, ..., n+T.
std::vector<DistanceSample> distance_samples(const Scenario& scenario, const FloquetOperator& floquet, int n, int T);
std::vector<DistanceSample> distance_samples(const Scenario& scenario, int n, int T);

/// Mean and second moment of one metric over a sample window.
AveragedDistance average(Metric metric, std::span<const DistanceSample> samples, int n, int T);

/// <d_n> = 1/(T+1) sum_{k=0}^{T} d_n(n + k).
AveragedDistance averaged_distance(Metric metric, const Scenario& scenario, int n, int T);

/// Throws NumericalIntegrityError if a sample leaves H in [0,1] or
/// Delta in [-2j, 2j].
void check_sample_bounds(const DistanceSample& sample, const SpinSystem& system);

}  // namespace kicktop

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kicktop/classical.hpp"
#include "kicktop/config.hpp"
#include "kicktop/metrics.hpp"

namespace kicktop {

/// Long-format row of a time-averaged sweep.
struct SweepRow {
  std::string scenario;
  std::string state;
  std::string axis;
  double j = 0.0;
  double kappa0 = 0.0;
  int n = 0;
  int T = 0;
  std::string metric;
  double mean = 0.0;
  double second_moment = 0.0;
};

/// One cell of a (t_alpha, kappa0) grid.
struct GridRow {
  std::string scenario;
  int t_alpha = 0;
  double kappa0 = 0.0;
  std::string metric;
  double value = 0.0;
};

/// Classical scalar curve sample (stability indicator, orbit excursion).
struct CurveRow {
  double kappa0 = 0.0;
  std::string metric;
  double value = 0.0;
};

/// Located parameter value: a cycle-stability boundary or the onset of
/// fixed-point divergence.
struct MarkerRow {
  std::string kind;
  int index = 0;
  double kappa0 = 0.0;
};

struct OrbitRow {
  std::string orbit;
  double kappa0 = 0.0;
  int step = 0;
  ClassicalPoint point;
};

struct SweepResult {
  ScenarioKind scenario = ScenarioKind::SweepKappa;
  std::vector<SweepRow> sweep;
  std::vector<GridRow> grid;
  std::vector<CurveRow> curve;
  std::vector<MarkerRow> markers;
  std::vector<OrbitRow> orbits;
  std::size_t expected_rows = 0;  ///< declared grid cardinality

  std::size_t row_count() const { return sweep.size() + grid.size() + curve.size(); }
};

/// Runs fn(i) for i in [0, count) on `threads` workers. Callers write into
/// pre-sized slots so results are ordered by index regardless of threads.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Builds the initial density matrix selected by the config.
DensityState initial_state(const SpinSystem& system, InitialState state);

SweepResult run_kappa_sweep(const ExperimentConfig& config);
SweepResult run_contour(const ExperimentConfig& config);
SweepResult run_kappa_zero_scan(const ExperimentConfig& config);
SweepResult run_odd_n(const ExperimentConfig& config);
SweepResult run_classical(const ExperimentConfig& config);

/// Dispatches on config.scenario (not Verify).
SweepResult run_experiment(const ExperimentConfig& config);

/// Largest distance from (0, 1, 0) reached by the orbit started at
/// (eps, sqrt(1 - eps^2), 0).
double fixed_point_excursion(double kappa0, double perturbation, int steps);

/// Smallest grid kappa whose fixed-point excursion exceeds the radius.
std::optional<double> divergence_onset(const std::vector<double>& kappas, double perturbation, int steps,
                                       double radius);

/// Writes CSV files for the result plus a run manifest into
/// config.output_dir. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& config, const SweepResult& result,
                                                 double wall_seconds);

}  // namespace kicktop

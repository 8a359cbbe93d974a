#include "kicktop/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <Eigen/Core>

#include "kicktop/csv.hpp"
#include "kicktop/error.hpp"
#include "kicktop/kicked_top.hpp"

#ifndef KICKTOP_VERSION
#define KICKTOP_VERSION "dev"
#endif

namespace kicktop {

namespace {

constexpr Metric kSweepMetrics[] = {Metric::Delta, Metric::Hellinger, Metric::Coherence};

Scenario make_scenario(const ExperimentConfig& config, double kappa0) {
  return Scenario{
      .params = TopParams{.system = config.system, .kappa0 = kappa0},
      .rho0 = initial_state(config.system, config.state),
      .axis_a = config.axis_a,
      .axis_b = config.axis_b,
  };
}

template <typename Row>
std::vector<Row> flatten(std::vector<std::vector<Row>>&& blocks) {
  std::vector<Row> out;
  for (auto& block : blocks) {
    out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
  }
  return out;
}

SweepResult run_averaged(const ExperimentConfig& config) {
  config.validate();
  const std::vector<double> kappas = config.kappa.values();
  const std::string scenario(scenario_name(config.scenario));
  std::vector<std::vector<SweepRow>> blocks(kappas.size());

  parallel_for(kappas.size(), config.threads, [&](std::size_t i) {
    const Scenario sc = make_scenario(config, kappas[i]);
    const FloquetOperator floquet = build_floquet(sc.params);
    auto& block = blocks[i];
    for (int n : config.n_values) {
      const auto samples = distance_samples(sc, floquet, n, config.T);
      for (Metric metric : kSweepMetrics) {
        const AveragedDistance avg = average(metric, samples, n, config.T);
        block.push_back(SweepRow{
            .scenario = scenario,
            .state = std::string(state_name(config.state)),
            .axis = config.axis_label,
            .j = config.system.j(),
            .kappa0 = kappas[i],
            .n = n,
            .T = config.T,
            .metric = std::string(metric_name(metric)),
            .mean = avg.mean,
            .second_moment = avg.second_moment,
        });
      }
    }
  });

  SweepResult result;
  result.scenario = config.scenario;
  result.sweep = flatten(std::move(blocks));
  result.expected_rows = kappas.size() * config.n_values.size() * std::size(kSweepMetrics);
  return result;
}

std::vector<GridRow> grid_rows(const std::string& scenario, double kappa0, const std::vector<DistanceSample>& samples,
                               int t_alpha_min, bool with_coherence) {
  std::vector<GridRow> rows;
  for (const DistanceSample& s : samples) {
    if (s.t_alpha < t_alpha_min) {
      continue;
    }
    rows.push_back({scenario, s.t_alpha, kappa0, "Delta", s.value_Delta});
    rows.push_back({scenario, s.t_alpha, kappa0, "H", s.value_H});
    if (with_coherence) {
      rows.push_back({scenario, s.t_alpha, kappa0, "C", s.value_C});
    }
  }
  return rows;
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
            next.store(count);
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

DensityState initial_state(const SpinSystem& system, InitialState state) {
  const Axis axis = state == InitialState::Z ? Axis::unit_z() : Axis::unit_y();
  return DensityState::pure(coherent_state(system, axis, +1));
}

SweepResult run_kappa_sweep(const ExperimentConfig& config) {
  if (config.scenario != ScenarioKind::SweepKappa) {
    throw ConfigError("run_kappa_sweep needs a sweep-kappa config");
  }
  return run_averaged(config);
}

SweepResult run_odd_n(const ExperimentConfig& config) {
  if (config.scenario != ScenarioKind::OddN) {
    throw ConfigError("run_odd_n needs an odd-n config");
  }
  return run_averaged(config);
}

SweepResult run_contour(const ExperimentConfig& config) {
  if (config.scenario != ScenarioKind::Contour) {
    throw ConfigError("run_contour needs a contour config");
  }
  config.validate();
  const std::vector<double> kappas = config.kappa.values();
  const int n = config.n_values.front();
  std::vector<std::vector<GridRow>> blocks(kappas.size());

  parallel_for(kappas.size(), config.threads, [&](std::size_t i) {
    const Scenario sc = make_scenario(config, kappas[i]);
    const auto samples = distance_samples(sc, build_floquet(sc.params), n, config.t_alpha_max);
    blocks[i] = grid_rows("contour", kappas[i], samples, config.t_alpha_min, true);
  });

  SweepResult result;
  result.scenario = config.scenario;
  result.grid = flatten(std::move(blocks));
  result.expected_rows =
      kappas.size() * static_cast<std::size_t>(config.t_alpha_max - config.t_alpha_min + 1) * 3;
  return result;
}

SweepResult run_kappa_zero_scan(const ExperimentConfig& config) {
  if (config.scenario != ScenarioKind::KappaZero) {
    throw ConfigError("run_kappa_zero_scan needs a kappa-zero config");
  }
  config.validate();
  const Scenario sc = make_scenario(config, 0.0);
  const auto samples = distance_samples(sc, config.n_values.front(), config.T);
  SweepResult result;
  result.scenario = config.scenario;
  result.grid = grid_rows("kappa-zero", 0.0, samples, 0, false);
  result.expected_rows = static_cast<std::size_t>(config.T + 1) * 2;
  return result;
}

double fixed_point_excursion(double kappa0, double perturbation, int steps) {
  const ClassicalPoint pole{.x = 0.0, .y = 1.0, .z = 0.0};
  const ClassicalPoint start{.x = perturbation, .y = std::sqrt(1.0 - perturbation * perturbation), .z = 0.0};
  double worst = 0.0;
  for (const ClassicalPoint& p : classical_orbit(start, kappa0, steps)) {
    worst = std::max(worst, p.distance_to(pole));
  }
  return worst;
}

std::optional<double> divergence_onset(const std::vector<double>& kappas, double perturbation, int steps,
                                       double radius) {
  for (double k : kappas) {
    if (fixed_point_excursion(k, perturbation, steps) > radius) {
      return k;
    }
  }
  return std::nullopt;
}

SweepResult run_classical(const ExperimentConfig& config) {
  if (config.scenario != ScenarioKind::Classical) {
    throw ConfigError("run_classical needs a classical config");
  }
  config.validate();
  const ClassicalSettings& cs = config.classical;
  const std::vector<double> kappas = config.kappa.values();
  std::vector<std::vector<CurveRow>> blocks(kappas.size());

  parallel_for(kappas.size(), config.threads, [&](std::size_t i) {
    const double k = kappas[i];
    const ClassicalPoint cycle_start{.x = 0.0, .y = 0.0, .z = 1.0};
    const auto cycle = classical_orbit(cycle_start, k, 4);
    blocks[i] = {
        {k, "indicator", cycle_stability_indicator(k)},
        {k, "fp_excursion", fixed_point_excursion(k, cs.perturbation, cs.orbit_steps)},
        {k, "cycle_return", cycle.back().distance_to(cycle_start)},
    };
  });

  SweepResult result;
  result.scenario = config.scenario;
  result.curve = flatten(std::move(blocks));
  result.expected_rows = kappas.size() * 3;

  const auto roots = stability_boundaries(cs.boundary_min, cs.boundary_max);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    result.markers.push_back({"cycle_stability", static_cast<int>(i), roots[i]});
  }
  if (const auto onset = divergence_onset(kappas, cs.perturbation, cs.orbit_steps, cs.divergence_radius)) {
    result.markers.push_back({"fp_divergence_onset", 0, *onset});
  }

  const double eps = cs.perturbation;
  const double rest = std::sqrt(1.0 - eps * eps);
  const std::pair<const char*, ClassicalPoint> starts[] = {
      {"fp_plus", {eps, rest, 0.0}},
      {"fp_minus", {eps, -rest, 0.0}},
      {"cycle", {eps, 0.0, rest}},
  };
  for (double k : cs.orbit_kappas) {
    for (const auto& [name, p0] : starts) {
      const auto orbit = classical_orbit(p0, k, cs.orbit_steps);
      for (std::size_t s = 0; s < orbit.size(); ++s) {
        result.orbits.push_back({name, k, static_cast<int>(s), orbit[s]});
      }
    }
  }
  return result;
}

SweepResult run_experiment(const ExperimentConfig& config) {
  switch (config.scenario) {
    case ScenarioKind::SweepKappa:
      return run_kappa_sweep(config);
    case ScenarioKind::Contour:
      return run_contour(config);
    case ScenarioKind::KappaZero:
      return run_kappa_zero_scan(config);
    case ScenarioKind::OddN:
      return run_odd_n(config);
    case ScenarioKind::Classical:
      return run_classical(config);
    case ScenarioKind::Verify:
      break;
  }
  throw ConfigError("verify is not a sweep scenario");
}

std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& config, const SweepResult& result,
                                                 double wall_seconds) {
  namespace fs = std::filesystem;
  if (result.row_count() != result.expected_rows) {
    throw NumericalIntegrityError("row count " + std::to_string(result.row_count()) +
                                  " differs from grid cardinality " + std::to_string(result.expected_rows));
  }
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());
  }

  const std::string scenario(scenario_name(config.scenario));
  std::vector<fs::path> written;
  const auto open = [&](const std::string& name) {
    const fs::path path = config.output_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot write '" + path.string() + "'");
    }
    written.push_back(path);
    return out;
  };

  // Render into memory first so a NaN never leaves a half-written file.
  std::string stem;
  if (config.scenario == ScenarioKind::Classical) {
    stem = scenario;
    std::ostringstream curve, markers, orbits;
    csv::write_curve(curve, scenario, result.curve);
    csv::write_markers(markers, scenario, result.markers);
    csv::write_orbits(orbits, scenario, result.orbits);
    open(stem + "_curve.csv") << curve.str();
    open(stem + "_markers.csv") << markers.str();
    open(stem + "_orbits.csv") << orbits.str();
  } else {
    stem = scenario + "_" + std::string(state_name(config.state));
    std::ostringstream body;
    if (!result.sweep.empty()) {
      csv::write_sweep(body, result.sweep);
    } else {
      csv::write_grid(body, result.grid);
    }
    open(stem + ".csv") << body.str();
  }

  std::ostringstream manifest;
  manifest << "# kicktop run manifest\n"
           << "version = " << KICKTOP_VERSION << '\n'
           << "eigen = " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION << '\n'
           << "compiler = " << __VERSION__ << '\n'
           << describe(config) << "rows = " << result.row_count() << '\n'
           << "wall_seconds = " << wall_seconds << '\n';
  open(stem + "_manifest.txt") << manifest.str();
  return written;
}

}  // namespace kicktop

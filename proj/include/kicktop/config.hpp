#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kicktop/spin.hpp"

namespace kicktop {

enum class ScenarioKind { SweepKappa, Contour, KappaZero, OddN, Classical, Verify };

std::string_view scenario_name(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario(std::string_view name);

/// Initial coherent state: |z, j> (period-4 cycle) or |y, j> (fixed point).
enum class InitialState { Z, Y };

std::string_view state_name(InitialState state);

/// Uniform grid min, min + step, ..., up to max (inclusive within 1e-9 step).
struct KappaGrid {
  double min = 0.0;
  double max = 7.0;
  double step = 0.1;

  std::size_t size() const;
  std::vector<double> values() const;
};

struct ClassicalSettings {
  int orbit_steps = 200;
  double perturbation = 0.01;       ///< X offset of the start point near (0, 1, 0)
  double divergence_radius = 0.2;   ///< orbit counts as diverged once it leaves this ball
  double boundary_min = 0.1;
  double boundary_max = 7.0;
  std::vector<double> orbit_kappas{1.5, 3.0, 6.0};
};

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::SweepKappa;
  SpinSystem system = SpinSystem::from_twice_j(30);
  InitialState state = InitialState::Z;
  Axis axis_a = Axis::unit_z();
  Axis axis_b = Axis::unit_z();
  std::string axis_label = "z";
  KappaGrid kappa;
  std::vector<int> n_values{2, 4, 6, 8};
  int T = 50;
  int t_alpha_min = 0;
  int t_alpha_max = 50;
  std::filesystem::path output_dir = "results";
  int threads = 1;
  ClassicalSettings classical;
  std::vector<SpinSystem> verify_systems{SpinSystem::from_twice_j(2), SpinSystem::from_twice_j(10),
                                         SpinSystem::from_twice_j(30)};

  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
};

/// Scenario defaults (j = 15, T = 50, kappa in [0, 7]).
ExperimentConfig default_config(ScenarioKind kind);

/// Ordered key/value pairs; later entries override earlier ones.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Reads an INI-style file: keys before any section apply to every
/// scenario, keys under [<scenario-name>] apply to that scenario only.
/// Returns the entries relevant to `kind`. Unknown sections are errors.
ConfigEntries read_config_file(const std::filesystem::path& path, ScenarioKind kind);

/// Applies entries; unknown keys and unparsable values raise ConfigError.
void apply_entries(ExperimentConfig& config, const ConfigEntries& entries);

/// Human-readable key = value dump, used for run manifests.
std::string describe(const ExperimentConfig& config);

}  // namespace kicktop

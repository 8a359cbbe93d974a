// Batch runner for the kicked-top measurement-disturbance experiments.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical-integrity
// failure, 3 verification failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kicktop/config.hpp"
#include "kicktop/error.hpp"
#include "kicktop/experiments.hpp"
#include "kicktop/verify.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2, kVerifyFailed = 3 };

struct Flags {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> state;
  std::optional<std::string> j;
  std::optional<std::string> T;
  std::optional<std::string> n;
  std::optional<std::string> kappa_min;
  std::optional<std::string> kappa_max;
  std::optional<std::string> kappa_step;
  std::optional<std::string> threads;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "INI config file (global keys plus [<subcommand>] section)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--state", f.state, "initial coherent state: z or y");
  cmd->add_option("--j", f.j, "total spin j");
  cmd->add_option("--T", f.T, "averaging window T");
  cmd->add_option("--n", f.n, "comma-separated kick offsets t_beta - t_alpha");
  cmd->add_option("--kappa-min", f.kappa_min, "first kappa0 of the grid");
  cmd->add_option("--kappa-max", f.kappa_max, "last kappa0 of the grid");
  cmd->add_option("--kappa-step", f.kappa_step, "kappa0 grid spacing");
  cmd->add_option("--threads", f.threads, "worker threads");
}

kicktop::ConfigEntries flag_entries(const Flags& f) {
  kicktop::ConfigEntries entries;
  const auto put = [&](const char* key, const std::optional<std::string>& v) {
    if (v) entries.emplace_back(key, *v);
  };
  put("out", f.out);
  put("state", f.state);
  put("j", f.j);
  put("T", f.T);
  put("n", f.n);
  put("kappa_min", f.kappa_min);
  put("kappa_max", f.kappa_max);
  put("kappa_step", f.kappa_step);
  put("threads", f.threads);
  return entries;
}

int run_verify_command(const kicktop::ExperimentConfig& config) {
  kicktop::VerifyOptions options;
  options.systems = config.verify_systems;
  const auto start = std::chrono::steady_clock::now();
  const kicktop::VerifyReport report = kicktop::run_verify(options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& check : report.checks) {
    std::printf("%s  %-60s residual=%.3e tol=%.1e %s\n", check.passed ? "PASS" : "FAIL", check.name.c_str(),
                check.residual, check.tolerance, check.detail.c_str());
  }
  std::printf("%zu checks, max identity residual %.3e, %.2f s\n", report.checks.size(),
              report.max_identity_residual(), seconds);
  return report.all_passed() ? kOk : kVerifyFailed;
}

int run_command(kicktop::ScenarioKind kind, const Flags& flags) {
  kicktop::ExperimentConfig config = kicktop::default_config(kind);
  if (!flags.config_path.empty()) {
    kicktop::apply_entries(config, kicktop::read_config_file(flags.config_path, kind));
  }
  kicktop::apply_entries(config, flag_entries(flags));
  config.validate();

  if (kind == kicktop::ScenarioKind::Verify) {
    return run_verify_command(config);
  }
  const auto start = std::chrono::steady_clock::now();
  const kicktop::SweepResult result = kicktop::run_experiment(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& path : kicktop::write_outputs(config, result, seconds)) {
    std::cout << path.string() << '\n';
  }
  std::cout << result.row_count() << " rows in " << seconds << " s\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kicked-top measurement disturbance experiments"};
  app.require_subcommand(1);

  Flags flags;
  std::optional<kicktop::ScenarioKind> chosen;
  const std::pair<kicktop::ScenarioKind, const char*> commands[] = {
      {kicktop::ScenarioKind::SweepKappa, "time-averaged Delta, H, C versus kappa0 for even n"},
      {kicktop::ScenarioKind::Contour, "Delta, H, C over the (t_alpha, kappa0) grid, no averaging"},
      {kicktop::ScenarioKind::KappaZero, "Delta and H versus t_alpha at kappa0 = 0"},
      {kicktop::ScenarioKind::OddN, "time-averaged sweep for odd n"},
      {kicktop::ScenarioKind::Classical, "classical map: cycle stability, fixed-point divergence, orbits"},
      {kicktop::ScenarioKind::Verify, "numerical check of the operator identities"},
  };
  for (const auto& [kind, help] : commands) {
    CLI::App* cmd = app.add_subcommand(std::string(kicktop::scenario_name(kind)), help);
    add_common_flags(cmd, flags);
    cmd->callback([&chosen, kind = kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    return run_command(*chosen, flags);
  } catch (const kicktop::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const kicktop::NumericalIntegrityError& e) {
    std::cerr << "numerical integrity failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

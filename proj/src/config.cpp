#include "kicktop/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kicktop/error.hpp"

namespace kicktop {

namespace {

constexpr std::pair<ScenarioKind, std::string_view> kScenarioNames[] = {
    {ScenarioKind::SweepKappa, "sweep-kappa"}, {ScenarioKind::Contour, "contour"},
    {ScenarioKind::KappaZero, "kappa-zero"},   {ScenarioKind::OddN, "odd-n"},
    {ScenarioKind::Classical, "classical"},    {ScenarioKind::Verify, "verify"},
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    out.push_back(trim(s.substr(start, end - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw ConfigError("invalid number for '" + key + "': '" + t + "'");
  }
  return value;
}

int parse_int(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("invalid integer for '" + key + "': '" + t + "'");
  }
  return value;
}

SpinSystem parse_spin(const std::string& key, std::string_view text) {
  try {
    return SpinSystem::from_j(parse_double(key, text));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("invalid value for '" + key + "': " + e.what());
  }
}

Axis parse_axis(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "x") return Axis::unit_x();
  if (t == "y") return Axis::unit_y();
  if (t == "z") return Axis::unit_z();
  const auto parts = split_list(t);
  if (parts.size() != 3) {
    throw ConfigError("axis '" + key + "' must be x, y, z or three comma-separated components");
  }
  try {
    return Axis::from_components(parse_double(key, parts[0]), parse_double(key, parts[1]),
                                 parse_double(key, parts[2]));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("invalid axis for '" + key + "': " + e.what());
  }
}

std::string format_list(const std::vector<int>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << (i ? "," : "") << values[i];
  }
  return os.str();
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
  for (const auto& [k, name] : kScenarioNames) {
    if (k == kind) {
      return name;
    }
  }
  return "?";
}

std::optional<ScenarioKind> parse_scenario(std::string_view name) {
  for (const auto& [k, n] : kScenarioNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

std::string_view state_name(InitialState state) { return state == InitialState::Z ? "z" : "y"; }

std::size_t KappaGrid::size() const {
  if (!(step > 0.0) || max < min) {
    return 0;
  }
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::vector<double> KappaGrid::values() const {
  const std::size_t count = size();
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = min + step * static_cast<double>(i);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (system.twice_j() < 1) {
    throw ConfigError("j must be at least 1/2");
  }
  if (scenario == ScenarioKind::Verify) {
    if (verify_systems.empty()) {
      throw ConfigError("verify needs at least one j");
    }
    return;
  }
  if (kappa.size() == 0) {
    throw ConfigError("kappa grid is empty (need step > 0 and max >= min)");
  }
  if (threads < 1) {
    throw ConfigError("threads must be >= 1");
  }
  if (scenario == ScenarioKind::Classical) {
    if (classical.orbit_steps < 1 || !(classical.divergence_radius > 0.0) || !(classical.perturbation > 0.0) ||
        classical.perturbation >= 1.0 || !(classical.boundary_min < classical.boundary_max)) {
      throw ConfigError("invalid classical settings");
    }
    return;
  }
  if (n_values.empty()) {
    throw ConfigError("n list is empty");
  }
  for (int n : n_values) {
    if (n < 1) {
      throw ConfigError("every n must be >= 1");
    }
    if (scenario == ScenarioKind::OddN && n % 2 == 0) {
      throw ConfigError("odd-n requires odd n values, got " + std::to_string(n));
    }
  }
  if (T < 0) {
    throw ConfigError("T must be >= 0");
  }
  if (scenario == ScenarioKind::Contour || scenario == ScenarioKind::KappaZero) {
    if (n_values.size() != 1) {
      throw ConfigError(std::string(scenario_name(scenario)) + " takes exactly one n");
    }
  }
  if (scenario == ScenarioKind::Contour && (t_alpha_min < 0 || t_alpha_max < t_alpha_min)) {
    throw ConfigError("t_alpha range must satisfy 0 <= t_alpha_min <= t_alpha_max");
  }
  if (scenario == ScenarioKind::KappaZero) {
    const auto values = kappa.values();
    if (values.size() != 1 || values.front() != 0.0) {
      throw ConfigError("kappa-zero runs at kappa0 = 0 only");
    }
  }
}

ExperimentConfig default_config(ScenarioKind kind) {
  ExperimentConfig c;
  c.scenario = kind;
  switch (kind) {
    case ScenarioKind::SweepKappa:
      break;
    case ScenarioKind::Contour:
      c.n_values = {2};
      break;
    case ScenarioKind::KappaZero:
      c.n_values = {1};
      c.kappa = KappaGrid{.min = 0.0, .max = 0.0, .step = 0.1};
      break;
    case ScenarioKind::OddN:
      c.n_values = {1, 3, 5, 7};
      break;
    case ScenarioKind::Classical:
      c.kappa.step = 0.01;
      break;
    case ScenarioKind::Verify:
      break;
  }
  return c;
}

ConfigEntries read_config_file(const std::filesystem::path& path, ScenarioKind kind) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("cannot read config '" + path.string() + "': " + e.what());
  }
  ConfigEntries global;
  ConfigEntries scoped;
  for (const auto& [name, node] : tree) {
    const auto section_kind = parse_scenario(name);
    if (node.empty() && !section_kind) {
      global.emplace_back(name, node.data());
      continue;
    }
    if (!section_kind) {
      throw ConfigError("unknown config section [" + name + "]");
    }
    if (*section_kind != kind) {
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) {
        throw ConfigError("nested sections are not supported: " + name + "." + key);
      }
      scoped.emplace_back(key, leaf.data());
    }
  }
  global.insert(global.end(), scoped.begin(), scoped.end());
  return global;
}

void apply_entries(ExperimentConfig& c, const ConfigEntries& entries) {
  bool axis_b_set = false;
  for (const auto& [raw_key, value] : entries) {
    const std::string key = trim(raw_key);
    if (key == "j") {
      c.system = parse_spin(key, value);
      c.verify_systems = {c.system};
    } else if (key == "state") {
      const std::string s = trim(value);
      if (s == "z") {
        c.state = InitialState::Z;
      } else if (s == "y") {
        c.state = InitialState::Y;
      } else {
        throw ConfigError("state must be 'z' or 'y', got '" + s + "'");
      }
    } else if (key == "axis") {
      c.axis_a = parse_axis(key, value);
      c.axis_label = trim(value);
      if (!axis_b_set) {
        c.axis_b = c.axis_a;
      }
    } else if (key == "axis_b") {
      c.axis_b = parse_axis(key, value);
      axis_b_set = true;
    } else if (key == "kappa_min") {
      c.kappa.min = parse_double(key, value);
    } else if (key == "kappa_max") {
      c.kappa.max = parse_double(key, value);
    } else if (key == "kappa_step") {
      c.kappa.step = parse_double(key, value);
    } else if (key == "n") {
      c.n_values.clear();
      for (const auto& item : split_list(value)) {
        c.n_values.push_back(parse_int(key, item));
      }
    } else if (key == "T") {
      c.T = parse_int(key, value);
    } else if (key == "t_alpha_min") {
      c.t_alpha_min = parse_int(key, value);
    } else if (key == "t_alpha_max") {
      c.t_alpha_max = parse_int(key, value);
    } else if (key == "out") {
      c.output_dir = trim(value);
    } else if (key == "threads") {
      c.threads = parse_int(key, value);
    } else if (key == "orbit_steps") {
      c.classical.orbit_steps = parse_int(key, value);
    } else if (key == "perturbation") {
      c.classical.perturbation = parse_double(key, value);
    } else if (key == "divergence_radius") {
      c.classical.divergence_radius = parse_double(key, value);
    } else if (key == "boundary_min") {
      c.classical.boundary_min = parse_double(key, value);
    } else if (key == "boundary_max") {
      c.classical.boundary_max = parse_double(key, value);
    } else if (key == "orbit_kappas") {
      c.classical.orbit_kappas.clear();
      for (const auto& item : split_list(value)) {
        c.classical.orbit_kappas.push_back(parse_double(key, item));
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

std::string describe(const ExperimentConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "scenario = " << scenario_name(c.scenario) << '\n';
  if (c.scenario == ScenarioKind::Verify) {
    os << "j =";
    for (const auto& s : c.verify_systems) {
      os << ' ' << s.j();
    }
    os << '\n';
    return os.str();
  }
  os << "j = " << c.system.j() << '\n'
     << "state = " << state_name(c.state) << '\n'
     << "axis = " << c.axis_a.x() << ',' << c.axis_a.y() << ',' << c.axis_a.z() << '\n'
     << "axis_b = " << c.axis_b.x() << ',' << c.axis_b.y() << ',' << c.axis_b.z() << '\n'
     << "kappa_min = " << c.kappa.min << '\n'
     << "kappa_max = " << c.kappa.max << '\n'
     << "kappa_step = " << c.kappa.step << '\n'
     << "n = " << format_list(c.n_values) << '\n'
     << "T = " << c.T << '\n'
     << "t_alpha_min = " << c.t_alpha_min << '\n'
     << "t_alpha_max = " << c.t_alpha_max << '\n'
     << "threads = " << c.threads << '\n';
  if (c.scenario == ScenarioKind::Classical) {
    os << "orbit_steps = " << c.classical.orbit_steps << '\n'
       << "perturbation = " << c.classical.perturbation << '\n'
       << "divergence_radius = " << c.classical.divergence_radius << '\n'
       << "boundary_min = " << c.classical.boundary_min << '\n'
       << "boundary_max = " << c.classical.boundary_max << '\n';
  }
  return os.str();
}

}  // namespace kicktop

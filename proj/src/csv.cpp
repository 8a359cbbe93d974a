#include "kicktop/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "kicktop/error.hpp"

namespace kicktop::csv {

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw NumericalIntegrityError("refusing to write a non-finite value");
  }
  if (value == 0.0) {
    return "0";  // folds -0
  }
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_sweep(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    os << r.scenario << ',' << r.state << ',' << r.axis << ',' << format_double(r.j) << ','
       << format_double(r.kappa0) << ',' << r.n << ',' << r.T << ',' << r.metric << ',' << format_double(r.mean)
       << ',' << format_double(r.second_moment) << '\n';
  }
}

void write_grid(std::ostream& os, std::span<const GridRow> rows) {
  os << kGridHeader << '\n';
  for (const GridRow& r : rows) {
    os << r.scenario << ',' << r.t_alpha << ',' << format_double(r.kappa0) << ',' << r.metric << ','
       << format_double(r.value) << '\n';
  }
}

void write_curve(std::ostream& os, const std::string& scenario, std::span<const CurveRow> rows) {
  os << kCurveHeader << '\n';
  for (const CurveRow& r : rows) {
    os << scenario << ',' << format_double(r.kappa0) << ',' << r.metric << ',' << format_double(r.value) << '\n';
  }
}

void write_markers(std::ostream& os, const std::string& scenario, std::span<const MarkerRow> rows) {
  os << kMarkerHeader << '\n';
  for (const MarkerRow& r : rows) {
    os << scenario << ',' << r.kind << ',' << r.index << ',' << format_double(r.kappa0) << '\n';
  }
}

void write_orbits(std::ostream& os, const std::string& scenario, std::span<const OrbitRow> rows) {
  os << kOrbitHeader << '\n';
  for (const OrbitRow& r : rows) {
    os << scenario << ',' << r.orbit << ',' << format_double(r.kappa0) << ',' << r.step << ','
       << format_double(r.point.x) << ',' << format_double(r.point.y) << ',' << format_double(r.point.z) << '\n';
  }
}

}  // namespace kicktop::csv

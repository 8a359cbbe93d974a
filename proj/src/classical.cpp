#include "kicktop/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace kicktop {

double ClassicalPoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

double ClassicalPoint::distance_to(const ClassicalPoint& other) const {
  const double dx = x - other.x;
  const double dy = y - other.y;
  const double dz = z - other.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

ClassicalPoint classical_step(const ClassicalPoint& p, double kappa0, DriftLog* log) {
  const double phase = kappa0 * p.x;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  ClassicalPoint next{
      .x = p.z * c + p.y * s,
      .y = -p.z * s + p.y * c,
      .z = -p.x,
  };
  const double norm = next.norm();
  const double drift = std::abs(norm - 1.0);
  if (drift > kRenormalizeThreshold) {
    next.x /= norm;
    next.y /= norm;
    next.z /= norm;
    if (log != nullptr) {
      ++log->renormalizations;
    }
  }
  if (log != nullptr && drift > log->max_drift) {
    log->max_drift = drift;
  }
  return next;
}

std::vector<ClassicalPoint> classical_orbit(const ClassicalPoint& p0, double kappa0, int steps, DriftLog* log) {
  if (steps < 0) {
    throw std::invalid_argument("classical_orbit: steps must be non-negative");
  }
  std::vector<ClassicalPoint> orbit;
  orbit.reserve(static_cast<std::size_t>(steps) + 1);
  orbit.push_back(p0);
  for (int s = 0; s < steps; ++s) {
    orbit.push_back(classical_step(orbit.back(), kappa0, log));
  }
  return orbit;
}

double cycle_stability_indicator(double kappa0) {
  const double g = 2.0 * std::cos(kappa0) + kappa0 * std::sin(kappa0);
  return g * g;
}

std::vector<double> stability_boundaries(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("stability_boundaries: need finite lo < hi");
  }
  constexpr double kMaxScanStep = 1e-3;
  constexpr double kRootTolerance = 1e-8;
  const auto f = [](double k) { return cycle_stability_indicator(k) - 4.0; };

  const auto cells = static_cast<long>(std::ceil((hi - lo) / kMaxScanStep));
  const double step = (hi - lo) / static_cast<double>(cells);

  std::vector<double> roots;
  double a = lo;
  double fa = f(a);
  if (fa == 0.0) {
    roots.push_back(a);
  }
  for (long i = 1; i <= cells; ++i) {
    const double b = (i == cells) ? hi : lo + step * static_cast<double>(i);
    const double fb = f(b);
    if (fb == 0.0) {
      roots.push_back(b);
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      double left = a;
      double right = b;
      double fleft = fa;
      while (right - left > kRootTolerance) {
        const double mid = 0.5 * (left + right);
        const double fmid = f(mid);
        if (fmid == 0.0) {
          left = right = mid;
          break;
        }
        if ((fmid < 0.0) == (fleft < 0.0)) {
          left = mid;
          fleft = fmid;
        } else {
          right = mid;
        }
      }
      roots.push_back(0.5 * (left + right));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace kicktop

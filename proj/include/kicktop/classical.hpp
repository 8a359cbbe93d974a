#pragma once

#include <utility>
#include <vector>

namespace kicktop {

/// Classical spin direction (X, Y, Z) = J/j on the unit sphere.
struct ClassicalPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
  double distance_to(const ClassicalPoint& other) const;
};

/// Running record of how far the map drifted off the sphere.
struct DriftLog {
  double max_drift = 0.0;  ///< largest | |p| - 1 | seen before renormalizing
  int renormalizations = 0;
};

/// Drift above this is removed by rescaling onto the sphere.
inline constexpr double kRenormalizeThreshold = 1e-12;

/// One period of the classical kicked-top map:
///   X' =  Z cos(k X) + Y sin(k X)
///   Y' = -Z sin(k X) + Y cos(k X)
///   Z' = -X
ClassicalPoint classical_step(const ClassicalPoint& p, double kappa0, DriftLog* log = nullptr);

/// p0 followed by `steps` iterates (steps + 1 points in total).
std::vector<ClassicalPoint> classical_orbit(const ClassicalPoint& p0, double kappa0, int steps,
                                            DriftLog* log = nullptr);

/// (2 cos k + k sin k)^2. The equatorial 4-cycle is linearly stable iff < 4.
double cycle_stability_indicator(double kappa0);

/// Roots of cycle_stability_indicator(k) - 4 inside [lo, hi], located by a
/// sign-change scan with step <= 1e-3 and bisection to 1e-8.
std::vector<double> stability_boundaries(double lo, double hi);

}  // namespace kicktop

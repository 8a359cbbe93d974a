#include "kicktop/spin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "kicktop/error.hpp"

namespace kicktop {

namespace {

constexpr double kAxisNormTolerance = 1e-12;
constexpr double kSpectrumSnapTolerance = 1e-8;

}  // namespace

SpinSystem SpinSystem::from_twice_j(int twice_j) {
  if (twice_j < 0) {
    throw std::invalid_argument("spin j must be non-negative, got 2j = " + std::to_string(twice_j));
  }
  return SpinSystem(twice_j);
}

SpinSystem SpinSystem::from_j(double j) {
  if (!std::isfinite(j) || j < 0.0) {
    throw std::invalid_argument("spin j must be a non-negative half-integer, got " + std::to_string(j));
  }
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-12) {
    throw std::invalid_argument("spin j must be a multiple of 1/2, got " + std::to_string(j));
  }
  return SpinSystem(static_cast<int>(rounded));
}

int SpinSystem::index_of(double m) const {
  const double idx = j() - m;
  const double rounded = std::round(idx);
  if (std::abs(idx - rounded) > 1e-12 || rounded < 0 || rounded >= dim()) {
    throw std::invalid_argument("m = " + std::to_string(m) + " is not a level of spin j = " + std::to_string(j()));
  }
  return static_cast<int>(rounded);
}

Axis Axis::from_components(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kAxisNormTolerance) {
    throw std::invalid_argument("axis must be a unit vector, |a| = " + std::to_string(norm));
  }
  return Axis{x, y, z};
}

Axis Axis::normalized(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm == 0.0) {
    throw std::invalid_argument("cannot normalize a zero or non-finite axis");
  }
  return Axis{x / norm, y / norm, z / norm};
}

Generators build_generators(const SpinSystem& system) {
  const int d = system.dim();
  const double j = system.j();
  CMatrix jplus = CMatrix::Zero(d, d);
  CMatrix jz = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = system.m(k);
    jz(k, k) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; m+1 sits one index above.
    if (k > 0) {
      jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  const CMatrix jminus = jplus.adjoint();
  const Complex i{0.0, 1.0};
  return Generators{
      .jx = 0.5 * (jplus + jminus),
      .jy = (jplus - jminus) / (2.0 * i),
      .jz = jz,
  };
}

CMatrix axis_operator(const Generators& g, const Axis& axis) {
  return axis.x() * g.jx + axis.y() * g.jy + axis.z() * g.jz;
}

CMatrix axis_operator(const SpinSystem& system, const Axis& axis) {
  return axis_operator(build_generators(system), axis);
}

CMatrix rotation_operator(const SpinSystem& system, const Axis& axis, double angle) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  const int d = system.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(axis_operator(system, axis));
  if (eig.info() != Eigen::Success) {
    throw NumericalIntegrityError("eigensolver failed for J.n");
  }
  // Ascending eigenvalues are -j, ..., +j; use the exact values so the
  // exponential carries no eigensolver error in its phases.
  CVector phases(d);
  for (int k = 0; k < d; ++k) {
    const double exact = -system.j() + k;
    if (std::abs(eig.eigenvalues()(k) - exact) > kSpectrumSnapTolerance) {
      throw NumericalIntegrityError("J.n spectrum deviates from {-j..j}");
    }
    phases(k) = std::polar(1.0, -angle * exact);
  }
  const CMatrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

AxisBasis axis_basis(const SpinSystem& system, const Axis& axis) {
  const int d = system.dim();
  const double cx = -axis.y();  // z x n = (-n_y, n_x, 0)
  const double cy = axis.x();
  const double sin_theta = std::hypot(cx, cy);

  CMatrix vectors;
  if (sin_theta < 1e-15) {
    if (axis.z() > 0.0) {
      vectors = CMatrix::Identity(d, d);
    } else {
      vectors = rotation_operator(system, Axis::unit_y(), std::numbers::pi);
    }
  } else {
    const double theta = std::atan2(sin_theta, axis.z());
    const Axis pivot = Axis::normalized(cx, cy, 0.0);
    vectors = rotation_operator(system, pivot, theta);
  }
  return AxisBasis{.axis = axis, .vectors = std::move(vectors)};
}

CVector coherent_state(const SpinSystem& system, const Axis& axis, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("coherent_state sign must be +1 or -1");
  }
  const AxisBasis basis = axis_basis(system, axis);
  return sign > 0 ? basis.vector(0) : basis.vector(system.dim() - 1);
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace kicktop

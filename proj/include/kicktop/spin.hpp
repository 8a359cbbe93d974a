#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace kicktop {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Total angular momentum j. Stored as the integer 2j so that half-integer
/// spins are represented exactly. Basis index 0 corresponds to m = +j and
/// indices run downward to m = -j at index dim()-1.
class SpinSystem {
 public:
  static SpinSystem from_twice_j(int twice_j);
  /// Rejects negative j and j that is not a multiple of 1/2.
  static SpinSystem from_j(double j);

  int twice_j() const { return twice_j_; }
  double j() const { return 0.5 * twice_j_; }
  int dim() const { return twice_j_ + 1; }
  bool integer_spin() const { return twice_j_ % 2 == 0; }

  /// Magnetic quantum number held by basis index `index`.
  double m(int index) const { return j() - index; }
  /// Inverse of m(); throws if m is not one of j, j-1, ..., -j.
  int index_of(double m) const;

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  explicit SpinSystem(int twice_j) : twice_j_(twice_j) {}
  int twice_j_;
};

/// Unit 3-vector. Construction fails unless the norm is 1 within 1e-12.
class Axis {
 public:
  static Axis from_components(double x, double y, double z);
  /// Scales an arbitrary non-zero vector onto the unit sphere.
  static Axis normalized(double x, double y, double z);

  static Axis unit_x() { return Axis{1.0, 0.0, 0.0}; }
  static Axis unit_y() { return Axis{0.0, 1.0, 0.0}; }
  static Axis unit_z() { return Axis{0.0, 0.0, 1.0}; }

  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }
  const std::array<double, 3>& components() const { return c_; }

  friend bool operator==(const Axis&, const Axis&) = default;

 private:
  Axis(double x, double y, double z) : c_{x, y, z} {}
  std::array<double, 3> c_;
};

struct Generators {
  CMatrix jx;
  CMatrix jy;
  CMatrix jz;
};

/// J_x, J_y, J_z in the J_z eigenbasis (ordering m = j ... -j), built from
/// the ladder matrix elements sqrt(j(j+1) - m(m+1)).
Generators build_generators(const SpinSystem& system);

/// J . n = n_x J_x + n_y J_y + n_z J_z.
CMatrix axis_operator(const SpinSystem& system, const Axis& axis);
CMatrix axis_operator(const Generators& generators, const Axis& axis);

enum class PhaseConvention {
  /// |n, m> = D(R_{z->n}) |z, m>, with R_{z->n} the shortest rotation taking
  /// z onto n (rotation about y by pi when n = -z).
  GeodesicFromZ,
};

/// Eigenbasis of J . n. Column k of `vectors` is |n, m = j - k>, expressed in
/// the J_z basis.
struct AxisBasis {
  Axis axis;
  CMatrix vectors;
  PhaseConvention convention = PhaseConvention::GeodesicFromZ;

  CVector vector(int index) const { return vectors.col(index); }
  int dim() const { return static_cast<int>(vectors.cols()); }
};

AxisBasis axis_basis(const SpinSystem& system, const Axis& axis);

/// Spin coherent state |n, +j> (sign = +1) or |n, -j> (sign = -1).
CVector coherent_state(const SpinSystem& system, const Axis& axis, int sign);

/// exp(-i angle J.n), assembled from the spectral decomposition of J.n.
CMatrix rotation_operator(const SpinSystem& system, const Axis& axis, double angle);

/// Largest entrywise modulus of a complex matrix.
double max_abs(const CMatrix& m);

}  // namespace kicktop

#include "kicktop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kicktop/classical.hpp"
#include "kicktop/kicked_top.hpp"
#include "kicktop/measurement.hpp"

namespace kicktop {

namespace {

constexpr double kAlgebraTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kLadderTol = 1e-9;
// Residual of the first-order expansion must drop 100x per 10x in kappa0;
// accepted band is 10^(2 +- 0.05).
constexpr double kScalingTol = 0.05;

std::string format_j(const SpinSystem& s) {
  std::ostringstream os;
  if (s.integer_spin()) {
    os << s.twice_j() / 2;
  } else {
    os << s.twice_j() << "/2";
  }
  return os.str();
}

class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(report) {}

  void identity(std::string name, double residual, double tol) {
    report_.checks.push_back(CheckResult{
        .name = std::move(name),
        .residual = residual,
        .tolerance = tol,
        .passed = std::isfinite(residual) && residual < tol,
        .kind = CheckKind::Identity,
        .detail = {},
    });
  }

  void scaling(std::string name, double ratio, double expected_ratio) {
    const double residual = std::abs(std::log10(ratio) - std::log10(expected_ratio));
    std::ostringstream detail;
    detail << "ratio " << ratio << " (expected ~" << expected_ratio << ")";
    report_.checks.push_back(CheckResult{
        .name = std::move(name),
        .residual = residual,
        .tolerance = kScalingTol,
        .passed = std::isfinite(residual) && residual < kScalingTol,
        .kind = CheckKind::Scaling,
        .detail = detail.str(),
    });
  }

 private:
  VerifyReport& report_;
};

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CMatrix conjugate(const CMatrix& op, const CMatrix& m) { return op * m * op.adjoint(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

void check_spin_algebra(Recorder& rec, const SpinSystem& system) {
  const std::string tag = "j=" + format_j(system) + ": ";
  const Generators g = build_generators(system);
  const Complex i{0.0, 1.0};
  const int d = system.dim();

  rec.identity(tag + "generators Hermitian",
               std::max({max_abs(g.jx - g.jx.adjoint()), max_abs(g.jy - g.jy.adjoint()),
                         max_abs(g.jz - g.jz.adjoint())}),
               kExactTol);
  rec.identity(tag + "[Jx,Jy]=iJz cyclic",
               std::max({max_abs(commutator(g.jx, g.jy) - i * g.jz), max_abs(commutator(g.jy, g.jz) - i * g.jx),
                         max_abs(commutator(g.jz, g.jx) - i * g.jy)}),
               kAlgebraTol);
  const double casimir = system.j() * (system.j() + 1.0);
  rec.identity(tag + "J^2 = j(j+1)",
               max_abs(g.jx * g.jx + g.jy * g.jy + g.jz * g.jz - casimir * CMatrix::Identity(d, d)), kAlgebraTol);

  const Axis axes[] = {Axis::unit_x(), Axis::unit_y(), Axis::unit_z(), Axis::normalized(1.0, 1.0, 1.0),
                       Axis::normalized(0.3, -0.5, -0.81), Axis::normalized(0.0, 0.0, -1.0)};
  double spectrum = 0.0;
  double basis = 0.0;
  double coherent = 0.0;
  for (const Axis& axis : axes) {
    const CMatrix op = axis_operator(g, axis);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(op, Eigen::EigenvaluesOnly);
    for (int k = 0; k < d; ++k) {
      spectrum = std::max(spectrum, std::abs(eig.eigenvalues()(k) - (-system.j() + k)));
    }
    const AxisBasis b = axis_basis(system, axis);
    Eigen::VectorXd ms(d);
    for (int k = 0; k < d; ++k) {
      ms(k) = system.m(k);
    }
    basis = std::max({basis, max_abs(op * b.vectors - b.vectors * ms.cast<Complex>().asDiagonal()),
                      max_abs(b.vectors.adjoint() * b.vectors - CMatrix::Identity(d, d))});
    const CVector top = coherent_state(system, axis, +1);
    coherent = std::max(coherent, std::abs(top.dot(op * top) - system.j()));
  }
  rec.identity(tag + "J.n spectrum = {j..-j}", spectrum, kAlgebraTol);
  rec.identity(tag + "axis basis eigenvectors orthonormal", basis, kAlgebraTol);
  rec.identity(tag + "coherent state <J.n> = j", coherent, kAlgebraTol);

  const Axis tilted = Axis::normalized(0.2, 0.7, -0.4);
  rec.identity(tag + "rotation composition",
               max_abs(rotation_operator(system, tilted, 0.7) * rotation_operator(system, tilted, 1.1) -
                       rotation_operator(system, tilted, 1.8)),
               kAlgebraTol);
  const CMatrix r = rotation_operator(system, Axis::unit_y(), std::numbers::pi / 2.0);
  const double sign = system.integer_spin() ? 1.0 : -1.0;
  rec.identity(tag + "R^4 = " + std::string(sign > 0 ? "+1" : "-1"),
               max_abs(r * r * r * r - sign * CMatrix::Identity(d, d)), kAlgebraTol);

  double completeness = 0.0;
  for (const Axis& axis : axes) {
    const auto proj = projectors(system, axis);
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t a = 0; a < proj.size(); ++a) {
      sum += proj[a];
      for (std::size_t b = 0; b < proj.size(); ++b) {
        const CMatrix expect = a == b ? proj[a] : CMatrix::Zero(d, d);
        completeness = std::max(completeness, max_abs(proj[a] * proj[b] - expect));
      }
    }
    completeness = std::max(completeness, max_abs(sum - CMatrix::Identity(d, d)));
  }
  rec.identity(tag + "projectors complete and orthogonal", completeness, kExactTol);
}

CMatrix torsion_for(const SpinSystem& system, double kappa0, bool corrupt) {
  CVector t = torsion_phases(system, kappa0);
  if (corrupt) {
    t = t.conjugate();
  }
  return t.asDiagonal();
}

void check_floquet_relations(Recorder& rec, const SpinSystem& system, bool corrupt) {
  if (system.twice_j() == 0) {
    return;
  }
  const std::string tag = "j=" + format_j(system) + ": ";
  const int d = system.dim();
  const CMatrix r = rotation_operator(system, Axis::unit_y(), std::numbers::pi / 2.0);
  const CMatrix rbar = rotation_operator(system, Axis::unit_z(), std::numbers::pi / 2.0);
  const AxisBasis zb = axis_basis(system, Axis::unit_z());
  const AxisBasis xb = axis_basis(system, Axis::unit_x());
  const AxisBasis yb = axis_basis(system, Axis::unit_y());

  const FloquetOperator floquet = build_floquet({system, 3.0});
  rec.identity(tag + "U unitary (kappa0=3)",
               max_abs(floquet.unitary().adjoint() * floquet.unitary() - CMatrix::Identity(d, d)), kExactTol);

  double torsion = 0.0, parity = 0.0, rz = 0.0, rx = 0.0, ry = 0.0, rbar_x = 0.0, ty = 0.0, cycle = 0.0;
  const CMatrix t_half = torsion_for(system, 0.5, corrupt);
  const CMatrix t_three = torsion_for(system, 3.0, corrupt);
  const CMatrix t_one = torsion_for(system, 1.0, corrupt);
  const CMatrix u0 = build_floquet({system, 0.0}).unitary();
  for (int k = 0; k < d; ++k) {
    const int mirror = d - 1 - k;  // index of -m
    const CMatrix zm = projector(zb.vector(k));
    const CMatrix xm = projector(xb.vector(k));
    const CMatrix ym = projector(yb.vector(k));
    const CMatrix z_mirror = projector(zb.vector(mirror));
    const CMatrix x_mirror = projector(xb.vector(mirror));
    torsion = std::max({torsion, max_abs(conjugate(t_half, zm) - zm), max_abs(conjugate(t_three, zm) - zm)});
    parity = std::max(parity, max_abs(conjugate(r * r, zm) - z_mirror));
    rz = std::max(rz, max_abs(conjugate(r, zm) - xm));
    rx = std::max(rx, max_abs(conjugate(r, xm) - z_mirror));
    ry = std::max(ry, max_abs(conjugate(r, ym) - ym));
    rbar_x = std::max(rbar_x, max_abs(conjugate(rbar, xm) - ym));
    ty = std::max(ty, max_abs(conjugate(t_one, ym) - conjugate(rbar, conjugate(t_one, xm))));
    // kappa0 = 0: Z_m -> X_m -> Z_-m -> X_-m -> Z_m
    const CMatrix step1 = conjugate(u0, zm);
    const CMatrix step2 = conjugate(u0, step1);
    const CMatrix step3 = conjugate(u0, step2);
    const CMatrix step4 = conjugate(u0, step3);
    cycle = std::max({cycle, max_abs(step1 - xm), max_abs(step2 - z_mirror), max_abs(step3 - x_mirror),
                      max_abs(step4 - zm)});
  }
  rec.identity(tag + "T Z_m T^-1 = Z_m", torsion, kExactTol);
  rec.identity(tag + "R^2 Z_m R^-2 = Z_-m", parity, kAlgebraTol);
  rec.identity(tag + "R Z_m R^-1 = X_m", rz, kAlgebraTol);
  rec.identity(tag + "R X_m R^-1 = Z_-m", rx, kAlgebraTol);
  rec.identity(tag + "R Y_m R^-1 = Y_m", ry, kAlgebraTol);
  rec.identity(tag + "Rbar X_m Rbar^-1 = Y_m", rbar_x, kAlgebraTol);
  rec.identity(tag + "T Y_m T^-1 = Rbar (T X_m T^-1) Rbar^-1", ty, kAlgebraTol);
  rec.identity(tag + "kappa0=0 cycle Z_m->X_m->Z_-m->X_-m", cycle, kAlgebraTol);

  // Needs the level m = j - 2.
  if (system.twice_j() < 2) {
    return;
  }
  const Generators g = build_generators(system);
  const CMatrix jz2 = g.jz * g.jz;
  const CMatrix ladder = x_ladder_basis(system);
  const CVector top = ladder.col(0);
  const CVector two_down = ladder.col(2);
  const CMatrix x_top = projector(top);
  const double j = system.j();
  const CMatrix expected =
      0.5 * std::sqrt(j * (2.0 * j - 1.0)) * (top * two_down.adjoint() - two_down * top.adjoint());
  const CMatrix comm = commutator(jz2, x_top);
  rec.identity(tag + "[Jz^2, X_j] ladder identity", max_abs(comm - expected), kLadderTol);

  const Complex i{0.0, 1.0};
  const auto first_order_residual = [&](double kappa0) {
    const CMatrix t = torsion_for(system, kappa0, corrupt);
    const CMatrix approx = x_top - (i * kappa0 / (2.0 * j)) * comm;
    return max_abs(conjugate(t, x_top) - approx);
  };
  rec.scaling(tag + "first-order torsion expansion O(kappa0^2)", first_order_residual(0.1) / first_order_residual(0.01),
              100.0);
}

void check_classical(Recorder& rec) {
  const ClassicalPoint cycle_start{0.0, 0.0, 1.0};
  const ClassicalPoint expected[] = {{1.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  double cycle = 0.0;
  double poles = 0.0;
  for (double k : {0.0, 1.0, 3.0, 6.0}) {
    const auto orbit = classical_orbit(cycle_start, k, 4);
    for (int s = 0; s < 4; ++s) {
      cycle = std::max(cycle, orbit[static_cast<std::size_t>(s) + 1].distance_to(expected[s]));
    }
    for (double y : {1.0, -1.0}) {
      const ClassicalPoint pole{0.0, y, 0.0};
      for (const auto& p : classical_orbit(pole, k, 100)) {
        poles = std::max(poles, p.distance_to(pole));
      }
    }
  }
  rec.identity("classical: equatorial 4-cycle closes", cycle, kExactTol);
  rec.identity("classical: poles Y=+-1 fixed", poles, kExactTol);

  DriftLog log;
  const auto orbit = classical_orbit(ClassicalPoint{0.3, 0.4, std::sqrt(0.75)}, 6.0, 10000, &log);
  double drift = 0.0;
  for (const auto& p : orbit) {
    drift = std::max(drift, std::abs(p.norm() - 1.0));
  }
  rec.identity("classical: sphere conserved over 1e4 steps (kappa0=6)", drift, 1e-8);
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double VerifyReport::max_identity_residual() const {
  double worst = 0.0;
  for (const auto& c : checks) {
    if (c.kind == CheckKind::Identity) {
      worst = std::max(worst, c.residual);
    }
  }
  return worst;
}

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

CMatrix x_ladder_basis(const SpinSystem& system) {
  const Generators g = build_generators(system);
  const Complex i{0.0, 1.0};
  const CMatrix k_minus = g.jy - i * g.jz;  // lowers J_x
  CMatrix v = axis_basis(system, Axis::unit_x()).vectors;
  for (int k = 1; k < system.dim(); ++k) {
    const Complex c = v.col(k).dot(k_minus * v.col(k - 1));
    if (std::abs(c) > 0.0) {
      v.col(k) *= c / std::abs(c);
    }
  }
  return v;
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  Recorder rec(report);
  for (const SpinSystem& system : options.systems) {
    check_spin_algebra(rec, system);
    check_floquet_relations(rec, system, options.corrupt_torsion_sign);
  }
  check_classical(rec);
  return report;
}

}  // namespace kicktop

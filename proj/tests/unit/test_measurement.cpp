#include <cmath>
#include <stdexcept>
#include <numeric>
#include <random>

#include "doctest.h"
#include "kicktop/error.hpp"
#include "kicktop/measurement.hpp"

using namespace kicktop;

namespace {

DensityState coherent(const SpinSystem& s, const Axis& axis, int sign = +1) {
  return DensityState::pure(coherent_state(s, axis, sign));
}

DensityState random_pure(std::mt19937_64& rng, const SpinSystem& s) {
  std::normal_distribution<double> g;
  CVector psi(s.dim());
  for (auto& c : psi) c = Complex{g(rng), g(rng)};
  psi.normalize();
  return DensityState::pure(psi);
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace

TEST_CASE("DensityState validation") {
  const auto s = SpinSystem::from_j(1);
  CHECK_NOTHROW(DensityState::maximally_mixed(s).validate());
  CMatrix bad = CMatrix::Identity(3, 3);
  CHECK_THROWS_AS(DensityState::from_matrix(bad), NumericalIntegrityError);
  CMatrix nonherm = CMatrix::Identity(3, 3) / 3.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityState::from_matrix(nonherm), NumericalIntegrityError);
  CMatrix negative = CMatrix::Zero(3, 3);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityState::from_matrix(negative), NumericalIntegrityError);
  CVector unnormalized = CVector::Ones(3);
  CHECK_THROWS_AS(DensityState::pure(unnormalized), std::invalid_argument);
}

TEST_CASE("projectors") {
  const auto s1 = SpinSystem::from_j(1);
  const auto zp = projectors(s1, Axis::unit_z());
  for (int k = 0; k < 3; ++k) {
    CHECK(max_abs(zp[k] - CMatrix(CVector::Unit(3, k) * CVector::Unit(3, k).adjoint())) == 0.0);
  }
  const auto xp = projectors(s1, Axis::unit_x());
  CHECK(xp[0](0, 0).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(xp[0](1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(xp[0](2, 2).real() == doctest::Approx(0.25).epsilon(1e-12));

  const auto s15 = SpinSystem::from_j(15);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 3; ++trial) {
    const auto ps = projectors(s15, Axis::normalized(g(rng), g(rng), g(rng)));
    CMatrix total = CMatrix::Zero(31, 31);
    for (const auto& p : ps) total += p;
    CHECK(max_abs(total - CMatrix::Identity(31, 31)) < 1e-12);
    CHECK(max_abs(ps[3] * ps[3] - ps[3]) < 1e-12);
    CHECK(max_abs(ps[3] * ps[4]) < 1e-12);
  }
}

TEST_CASE("dephase") {
  const auto s1 = SpinSystem::from_j(1);
  const DensityState x = coherent(s1, Axis::unit_x());
  const CMatrix d = dephase(x, Axis::unit_z()).matrix();
  CMatrix expected = CMatrix::Zero(3, 3);
  expected.diagonal() << 0.25, 0.5, 0.25;
  CHECK(max_abs(d - expected) < 1e-12);

  CHECK(max_abs(dephase(x, Axis::unit_x()).matrix() - x.matrix()) < 1e-12);

  std::mt19937_64 rng(11);
  const auto s5 = SpinSystem::from_j(5);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityState rho = random_pure(rng, s5);
    std::normal_distribution<double> g;
    const Axis axis = Axis::normalized(g(rng), g(rng), g(rng));
    const AxisBasis basis = axis_basis(s5, axis);
    const DensityState once = dephase(rho, basis);
    CHECK(max_abs(dephase(once, basis).matrix() - once.matrix()) < 1e-12);
    CHECK(max_diff(outcome_distribution(once, basis).probs, outcome_distribution(rho, basis).probs) < 1e-12);
    CHECK_NOTHROW(once.validate());
  }
}

TEST_CASE("outcome_distribution") {
  const auto s = SpinSystem::from_j(15);
  const auto point = outcome_distribution(coherent(s, Axis::unit_z()), Axis::unit_z());
  CHECK(point.probs[0] == 1.0);
  CHECK(sum(point.probs) == 1.0);

  const auto s1 = SpinSystem::from_j(1);
  const auto x = outcome_distribution(coherent(s1, Axis::unit_x()), Axis::unit_z());
  CHECK(max_diff(x.probs, {0.25, 0.5, 0.25}) < 1e-12);

  const auto uniform = outcome_distribution(DensityState::maximally_mixed(s), Axis::unit_y());
  for (double p : uniform.probs) CHECK(p == doctest::Approx(1.0 / 31.0).epsilon(1e-12));
}

TEST_CASE("OutcomeDistribution::from_probabilities clipping and errors") {
  const auto clipped = OutcomeDistribution::from_probabilities({-5e-13, 0.5, 0.5 + 5e-13});
  CHECK(clipped.probs[0] == 0.0);
  CHECK(sum(clipped.probs) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(OutcomeDistribution::from_probabilities({-1e-6, 0.5, 0.5 + 1e-6}), NumericalIntegrityError);
  CHECK_THROWS_AS(OutcomeDistribution::from_probabilities({0.5, 0.6}), NumericalIntegrityError);
  CHECK_THROWS_AS(OutcomeDistribution::from_probabilities({1.1, -0.1}), NumericalIntegrityError);
  CHECK_THROWS_AS(OutcomeDistribution::from_probabilities({std::nan(""), 1.0}), NumericalIntegrityError);
}

TEST_CASE("unconditional") {
  const auto s = SpinSystem::from_j(15);
  const FloquetOperator rot = build_floquet({s, 0.0});
  const DensityState z = coherent(s, Axis::unit_z());
  const auto flipped = unconditional(z, rot, 2, Axis::unit_z());
  CHECK(flipped.probs[30] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flipped.context.t_beta == 2);
  CHECK(flipped.context.conditioning == Conditioning::None);

  const DensityState y = coherent(s, Axis::unit_y());
  const auto y0 = unconditional(y, rot, 0, Axis::unit_z());
  for (int t : {1, 2, 5, 9}) {
    CHECK(max_diff(unconditional(y, rot, t, Axis::unit_z()).probs, y0.probs) < 1e-10);
  }
  const FloquetOperator chaotic = build_floquet({s, 4.0});
  CHECK(max_diff(unconditional(y, chaotic, 0, Axis::unit_x()).probs,
                 outcome_distribution(y, Axis::unit_x()).probs) == 0.0);
}

TEST_CASE("conditional") {
  const auto s1 = SpinSystem::from_j(1);
  const FloquetOperator rot1 = build_floquet({s1, 0.0});
  const DensityState z1 = coherent(s1, Axis::unit_z());
  const auto pc = conditional(z1, rot1, 1, 2, Axis::unit_z(), Axis::unit_z());
  CHECK(max_diff(pc.probs, {0.375, 0.25, 0.375}) < 1e-12);
  CHECK(pc.context.t_alpha == 1);
  CHECK(pc.context.conditioning == Conditioning::Dephased);

  const auto s = SpinSystem::from_j(15);
  const FloquetOperator rot = build_floquet({s, 0.0});
  const DensityState z = coherent(s, Axis::unit_z());
  for (int ta : {0, 2, 4}) {
    for (int tb = ta + 1; tb <= ta + 4; ++tb) {
      CHECK(max_diff(conditional(z, rot, ta, tb, Axis::unit_z(), Axis::unit_z()).probs,
                     unconditional(z, rot, tb, Axis::unit_z()).probs) < 1e-10);
    }
  }
  CHECK_THROWS_AS(conditional(z, rot, 2, 2, Axis::unit_z(), Axis::unit_z()), std::invalid_argument);
  CHECK_THROWS_AS(conditional(z, rot, 3, 1, Axis::unit_z(), Axis::unit_z()), std::invalid_argument);
  CHECK_THROWS_AS(conditional(z, rot, -1, 1, Axis::unit_z(), Axis::unit_z()), std::invalid_argument);
}

TEST_CASE("joint distribution marginals") {
  const auto s1 = SpinSystem::from_j(1);
  const FloquetOperator rot1 = build_floquet({s1, 0.0});
  const DensityState z1 = coherent(s1, Axis::unit_z());
  const JointDistribution jd = joint(z1, rot1, 1, 2, Axis::unit_z(), Axis::unit_z());
  CHECK(jd.alice_marginal()[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(jd.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_diff(jd.bob_marginal(), {0.375, 0.25, 0.375}) < 1e-12);

  const auto s5 = SpinSystem::from_j(5);
  const FloquetOperator f = build_floquet({s5, 2.7});
  const DensityState rho = coherent(s5, Axis::unit_y());
  const Axis a = Axis::normalized(1.0, 0.5, 0.2);
  const JointDistribution j5 = joint(rho, f, 3, 6, a, Axis::unit_z());
  CHECK(max_diff(j5.alice_marginal(), outcome_distribution(evolve(rho, f, 3), a).probs) < 1e-12);
  CHECK(max_diff(j5.bob_marginal(), conditional(rho, f, 3, 6, a, Axis::unit_z()).probs) < 1e-12);
  CHECK_THROWS_AS(joint(rho, f, 6, 6, a, a), std::invalid_argument);

  // Alice outcomes that cannot occur give empty columns.
  const JointDistribution sparse = joint(z1, rot1, 0, 1, Axis::unit_z(), Axis::unit_z());
  CHECK(sparse.p.col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sparse.p.col(2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("property: dephasing route equals joint marginal on randomized cases") {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> pick_j(0, 2);
  std::uniform_real_distribution<double> kappa(0.0, 7.0);
  std::uniform_int_distribution<int> time(0, 8);
  std::normal_distribution<double> g;
  const int js[] = {1, 2, 5};
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = SpinSystem::from_j(js[pick_j(rng)]);
    const FloquetOperator f = build_floquet({s, kappa(rng)});
    const DensityState rho = random_pure(rng, s);
    const int ta = time(rng);
    const int tb = ta + 1 + time(rng);
    const Axis a = Axis::normalized(g(rng), g(rng), g(rng));
    const Axis b = trial % 2 == 0 ? a : Axis::normalized(g(rng), g(rng), g(rng));
    const auto pc = conditional(rho, f, ta, tb, a, b);
    const auto jm = joint(rho, f, ta, tb, a, b).bob_marginal();
    CHECK(max_diff(pc.probs, jm) < 1e-12);
    CHECK(std::abs(sum(pc.probs) - 1.0) < 1e-10);
  }
}

TEST_CASE("property: no-signalling when the state is diagonal in Alice's basis") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  const auto s = SpinSystem::from_j(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Axis a = Axis::normalized(g(rng), g(rng), g(rng));
    const AxisBasis basis = axis_basis(s, a);
    Eigen::VectorXd w(s.dim());
    for (auto& x : w) x = u(rng);
    w /= w.sum();
    const DensityState rho =
        DensityState::from_matrix(basis.vectors * w.cast<Complex>().asDiagonal() * basis.vectors.adjoint());
    const FloquetOperator f = build_floquet({s, 7.0 * u(rng)});
    const int tb = 1 + trial % 5;
    CHECK(max_diff(conditional(rho, f, 0, tb, a, a).probs, unconditional(rho, f, tb, a).probs) < 1e-10);
  }
}

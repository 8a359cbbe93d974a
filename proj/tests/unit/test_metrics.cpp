#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "kicktop/error.hpp"
#include "kicktop/metrics.hpp"
#include "support/oracles.hpp"

using namespace kicktop;

namespace {

Scenario coherent_scenario(double j, double kappa0, const Axis& start) {
  const auto s = SpinSystem::from_j(j);
  return {{s, kappa0}, DensityState::pure(coherent_state(s, start, +1)), Axis::unit_z(), Axis::unit_z()};
}

}  // namespace

TEST_CASE("hellinger") {
  const std::vector<double> p{0.375, 0.25, 0.375};
  const std::vector<double> q{0.0, 0.0, 1.0};
  CHECK(hellinger(p, p) == 0.0);
  CHECK(hellinger(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hellinger(p, q) == doctest::Approx(std::sqrt(1.0 - std::sqrt(0.375))).epsilon(1e-14));
  CHECK_THROWS_AS(hellinger(p, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("participation") {
  CHECK(participation(std::vector<double>{0.0, 1.0, 0.0}) == 1.0);
  CHECK(participation(std::vector<double>(31, 1.0 / 31.0)) == doctest::Approx(31.0).epsilon(1e-13));
  CHECK(participation(std::vector<double>{0.375, 0.25, 0.375}) == doctest::Approx(32.0 / 11.0).epsilon(1e-14));
  CHECK_THROWS(participation(std::vector<double>{0.0, 0.0}));
}

TEST_CASE("delta") {
  const std::vector<double> pc{0.375, 0.25, 0.375};
  const std::vector<double> pb{0.0, 0.0, 1.0};
  CHECK(delta(pc, pc) == 0.0);
  CHECK(delta(pc, pb) == doctest::Approx(32.0 / 11.0 - 1.0).epsilon(1e-14));
  std::vector<double> point(31, 0.0);
  point[4] = 1.0;
  CHECK(delta(std::vector<double>(31, 1.0 / 31.0), point) == doctest::Approx(30.0).epsilon(1e-13));
}

TEST_CASE("coherence_l1") {
  const auto s1 = SpinSystem::from_j(1);
  const DensityState x1 = DensityState::pure(coherent_state(s1, Axis::unit_x(), +1));
  CHECK(coherence_l1(x1, Axis::unit_z()) == doctest::Approx(0.5 + std::sqrt(2.0)).epsilon(1e-12));
  const auto s15 = SpinSystem::from_j(15);
  CHECK(coherence_l1(DensityState::pure(coherent_state(s15, Axis::unit_x(), +1)), Axis::unit_x()) < 1e-12);
  CHECK(coherence_l1(DensityState::maximally_mixed(s15), Axis::unit_y()) < 1e-12);
}

TEST_CASE("property: distance and ratio invariants on random vectors") {
  std::mt19937_64 rng(314159);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 30;
    const auto p = oracle::random_simplex(rng, n);
    const auto q = oracle::random_simplex(rng, n);
    const auto r = oracle::random_simplex(rng, n);
    CHECK(hellinger(p, q) == hellinger(q, p));
    CHECK(hellinger(p, r) <= hellinger(p, q) + hellinger(q, r) + 1e-15);
    CHECK(hellinger(p, q) >= 0.0);
    CHECK(hellinger(p, q) <= 1.0);
    CHECK(delta(p, q) == -delta(q, p));

    auto shuffled = p;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(participation(shuffled) == doctest::Approx(participation(p)).epsilon(1e-13));
    CHECK(participation(p) >= 1.0);
    CHECK(participation(p) <= n + 1e-12);
  }
}

TEST_CASE("property: coherence is independent of eigenvector phases") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> phase(-3.2, 3.2);
  std::normal_distribution<double> g;
  const auto s = SpinSystem::from_j(5);
  for (int trial = 0; trial < 10; ++trial) {
    CVector psi(s.dim());
    for (auto& c : psi) c = Complex{g(rng), g(rng)};
    psi.normalize();
    const DensityState rho = DensityState::pure(psi);
    AxisBasis basis = axis_basis(s, Axis::normalized(g(rng), g(rng), g(rng)));
    const double before = coherence_l1(rho, basis);
    for (int k = 0; k < basis.dim(); ++k) basis.vectors.col(k) *= std::polar(1.0, phase(rng));
    CHECK(std::abs(coherence_l1(rho, basis) - before) < 1e-12);
  }
}

TEST_CASE("distance_samples for the j=1 rotation") {
  const Scenario sc = coherent_scenario(1, 0.0, Axis::unit_z());
  const auto samples = distance_samples(sc, 1, 1);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].t_alpha == 0);
  CHECK(samples[0].t_beta == 1);
  CHECK(samples[0].value_Delta == 0.0);
  CHECK(samples[1].t_alpha == 1);
  CHECK(samples[1].t_beta == 2);
  CHECK(samples[1].value_Delta == doctest::Approx(32.0 / 11.0 - 1.0).epsilon(1e-12));
  CHECK(samples[1].value_H == doctest::Approx(std::sqrt(1.0 - std::sqrt(0.375))).epsilon(1e-12));
  CHECK(samples[1].value_C == doctest::Approx(0.5 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(distance_samples(sc, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(distance_samples(sc, 1, -1), std::invalid_argument);
}

TEST_CASE("averaged_distance") {
  const Scenario z = coherent_scenario(5, 0.0, Axis::unit_z());
  for (int n : {2, 4}) {
    CHECK(averaged_distance(Metric::Delta, z, n, 7).mean == doctest::Approx(0.0).scale(1e-10));
    CHECK(averaged_distance(Metric::Hellinger, z, n, 7).mean < 1e-10);
  }

  const Scenario y = coherent_scenario(5, 0.0, Axis::unit_y());
  const auto single = distance_samples(y, 3, 0);
  const auto avg = averaged_distance(Metric::Hellinger, y, 3, 6);
  CHECK(avg.mean == doctest::Approx(single[0].value_H).epsilon(1e-10));
  CHECK(avg.second_moment == doctest::Approx(single[0].value_H * single[0].value_H).epsilon(1e-10));
  CHECK(avg.n == 3);
  CHECK(avg.T == 6);

  const Scenario chaotic = coherent_scenario(5, 4.2, Axis::unit_z());
  const auto t0 = averaged_distance(Metric::Delta, chaotic, 2, 0);
  CHECK(t0.mean == distance_samples(chaotic, 2, 0)[0].value_Delta);
  CHECK(t0.second_moment == doctest::Approx(t0.mean * t0.mean));

  const auto samples = distance_samples(chaotic, 2, 5);
  const auto c = average(Metric::Coherence, samples, 2, 5);
  double manual = 0.0;
  for (const auto& smp : samples) manual += smp.value_C;
  CHECK(c.mean == doctest::Approx(manual / 6.0).epsilon(1e-14));
}

TEST_CASE("property: at zero kick only odd t_alpha with even t_beta disturbs") {
  const Scenario sc = coherent_scenario(5, 0.0, Axis::unit_z());
  const double expected = oracle::kappa_zero_violation(5).delta;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& smp : distance_samples(sc, n, 10)) {
      const bool violating = smp.t_alpha % 2 == 1 && smp.t_beta % 2 == 0;
      if (violating) {
        CHECK(smp.value_Delta == doctest::Approx(expected).epsilon(1e-10));
        CHECK(smp.value_H > 0.1);
      } else {
        CHECK(std::abs(smp.value_Delta) < 1e-10);
        CHECK(smp.value_H < 1e-10);
      }
    }
  }
}

TEST_CASE("check_sample_bounds") {
  const auto s = SpinSystem::from_j(1);
  CHECK_NOTHROW(check_sample_bounds({2, 1, 0.5, 1.9, 1.0}, s));
  CHECK_THROWS_AS(check_sample_bounds({2, 1, 1.01, 0.0, 0.0}, s), NumericalIntegrityError);
  CHECK_THROWS_AS(check_sample_bounds({2, 1, 0.0, -2.5, 0.0}, s), NumericalIntegrityError);
  CHECK(metric_name(Metric::Delta) == "Delta");
  CHECK(metric_name(Metric::Hellinger) == "H");
  CHECK(metric_name(Metric::Coherence) == "C");
}

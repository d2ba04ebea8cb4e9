#include <doctest.h>

#include <cmath>
#include <numbers>

#include "annulus/geometry.hpp"

using namespace annulus;
using std::numbers::pi;

TEST_CASE("geometry validates radii and dimension") {
  CHECK_THROWS_AS(Geometry(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Geometry(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Geometry(1.0, 2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Geometry::from_R(-1.0), std::invalid_argument);
}

TEST_CASE("conformal class depends only on the ratio") {
  const Geometry g1(1.0, 100.0), g2(3.0, 300.0);
  CHECK(g1.conformal_class() == doctest::Approx(std::log(100.0)));
  CHECK(g2.conformal_class() == doctest::Approx(g1.conformal_class()).epsilon(1e-14));
  CHECK(Geometry::from_R(7.5, 3).conformal_class() == doctest::Approx(7.5));
}

TEST_CASE("problem I threshold") {
  CHECK(threshold_problem1(1.0) == doctest::Approx(pi * std::sqrt(2.0)));
  CHECK(std::exp(threshold_problem1(1.0)) == doctest::Approx(85.019695).epsilon(1e-7));
  CHECK(threshold_problem1(3.0) < threshold_problem1(2.0));
  CHECK_THROWS(threshold_problem1(0.5));
}

TEST_CASE("uniqueness threshold is finite and decreasing in m") {
  double prev = 1e300;
  for (int m = 1; m <= 6; ++m) {
    const double t = threshold_problem1_unique(m);
    CHECK(std::isfinite(t));
    CHECK(t > 0.0);
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("dimension thresholds") {
  CHECK(threshold_dim4() == doctest::Approx(15.0 * std::sqrt(4.0 + 3.0 * pi * (pi + 1.0)) / 2.0));
  CHECK(threshold_dim4() == doctest::Approx(49.2).epsilon(1e-3));
  CHECK(threshold_dim4_switch() == doctest::Approx(pi * std::sqrt(5.0 / 3.0)));
  CHECK(bracket_validity(2.0) == doctest::Approx(2.5));
}

TEST_CASE("assumption II region and the problem II threshold") {
  CHECK_FALSE(assumption_II(1.0, 0));
  CHECK(assumption_II(2.0, 0));
  CHECK(assumption_II(3.0, 1));
  CHECK_FALSE(assumption_II(2.0, 2));
  CHECK(threshold_problem2_assumptionI(3.0, 1) == 0.0);
  const double t = threshold_problem2_assumptionI(1.0, 1);
  CHECK(std::isfinite(t));
  CHECK(t > 0.0);
  CHECK_THROWS_AS(threshold_problem2_assumptionI(0.5, 0), std::invalid_argument);
}

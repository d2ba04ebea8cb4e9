#include <doctest.h>

#include <cmath>
#include <numbers>

#include "annulus/eigensolve.hpp"
#include "annulus/geometry.hpp"

using namespace annulus;
using std::numbers::pi;

// Reference values: Richardson extrapolation of the finite-difference oracle at N = 1000, 2000.
TEST_CASE("secular values match the frozen oracle references") {
  struct Ref {
    Problem p;
    double m;
    int n, d;
    double R, value;
  };
  const Ref refs[] = {
      {Problem::WeightedL2, 1.0, 0, 2, 10.0, 1.28070525603},
      {Problem::WeightedL2, 1.0, 1, 2, 10.0, 0.499453628301},
      {Problem::WeightedL2, 2.0, 1, 2, 30.0, 9.11456272909},
      {Problem::WeightedL2, 1.5, 2, 2, 10.0, 4.45964369024},
      {Problem::WeightedGradient, 1.0, 0, 2, 10.0, 1.15072174173},
      {Problem::WeightedGradient, 1.0, 1, 2, 10.0, 0.236915065665},
      {Problem::WeightedGradient, 2.0, 0, 2, 10.0, 12.2286144076},
      {Problem::WeightedGradient, 1.2, 0, 2, 10.0, 2.20422549239},
      {Problem::WeightedGradient, 2.0, 2, 2, 10.0, 0.344981009774},
      {Problem::WeightedGradient, 3.0, 1, 2, 10.0, 26.8121386855},
      {Problem::WeightedL2, 1.0, 0, 3, 20.0, 0.633496775876},
      {Problem::WeightedGradient, 1.0, 1, 3, 20.0, 0.76325390829},
      {Problem::WeightedL2, 1.0, 0, 5, 20.0, 1.73690906928},
      {Problem::WeightedGradient, 1.0, 0, 5, 20.0, 6.28768043543},
      {Problem::WeightedGradient, 1.0, 1, 4, 20.0, 3.0618777257},
      {Problem::WeightedL2, 1.0, 2, 4, 20.0, 64.5169532694},
  };
  for (const auto& r : refs) {
    const Geometry g = Geometry::from_R(r.R, r.d);
    double v;
    if (r.d == 2)
      v = r.p == Problem::WeightedL2 ? lambda_mn(r.m, r.n, g).value : mu_mn(r.m, r.n, g).value;
    else
      v = r.p == Problem::WeightedL2 ? lambda_n_dimd(r.n, g).value : mu_n_dimd(r.n, g).value;
    INFO("problem ", to_string(r.p), " m=", r.m, " n=", r.n, " d=", r.d);
    CHECK(v == doctest::Approx(r.value).epsilon(5e-6));
  }
}

TEST_CASE("exact d = 4 radial value") {
  for (double R : {5.0, 10.0, 50.0}) {
    const Geometry g = Geometry::from_R(R, 4);
    CHECK(mu0_dim4_exact(g) == doctest::Approx(4.0 + 4.0 * pi * pi / (R * R)));
    const auto r = mu_n_dimd(0, g);
    CHECK(r.value == doctest::Approx(mu0_dim4_exact(g)).epsilon(1e-12));
    CHECK(r.theta_star == doctest::Approx(2.0 * pi));
  }
}

TEST_CASE("problem I values sit inside the sandwich bounds") {
  for (double m : {1.0, 2.0, 3.0})
    for (int n = 0; n <= 4; ++n)
      for (double R : {10.0, 30.0, 100.0}) {
        if (R < bracket_validity(m * m + double(n) * n)) continue;
        const auto r = lambda_mn(m, n, Geometry::from_R(R));
        CHECK(r.value > lower_bound_lambda_d2(m, n, R));
        CHECK(r.value < upper_bound_lambda_d2(m, n, R));
        CHECK(r.theta_star > pi);
        CHECK(r.theta_star < 2.0 * pi);
      }
}

TEST_CASE("eigenvalues decrease with the conformal class") {
  double prev = 1e300;
  for (double R : {5.0, 10.0, 20.0, 50.0}) {
    const double v = lambda_mn(1.0, 1, Geometry::from_R(R)).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("minimal mode in the plane is |n| = m for large conformal class") {
  for (int m = 1; m <= 3; ++m) {
    const double R = threshold_problem1_unique(m) * 1.05;
    CHECK(lambda_min_d2(m, Geometry::from_R(R)).mode == m);
  }
}

TEST_CASE("radial mode wins for d >= 5 and mode 1 for d = 3 in the gradient problem") {
  CHECK(lambda_min_dimd(Geometry::from_R(200.0, 5)).mode == 0);
  CHECK(mu_min_dimd(Geometry::from_R(200.0, 5)).mode == 0);
  CHECK(mu_min_dimd(Geometry::from_R(200.0, 3)).mode == 1);
  CHECK(mu_min_dimd(Geometry::from_R(200.0, 4)).mode == 1);
}

TEST_CASE("certified radial minimiser in dimension four") {
  const double s = threshold_dim4_switch();
  CHECK(certified_radial_dim4(s + 0.01));
  CHECK_FALSE(certified_radial_dim4(s - 0.01));
}

TEST_CASE("mode analysis reports its conditions") {
  const auto rep = minimal_mode_analysis(Problem::WeightedL2, 2, 1.0, 10.0);
  CHECK_FALSE(rep.conditions.empty());
  CHECK(rep.computed_argmin == 1);
}

TEST_CASE("gradient minimiser in the plane reports both candidates for m >= 2") {
  const auto mm = mu_min_d2(2, Geometry::from_R(10.0));
  CHECK(mm.radial.has_value());
  CHECK(mm.matched.has_value());
  CHECK(mm.best.value <= std::min(mm.radial->value, mm.matched->value));
}

#include <doctest.h>

#include <cmath>

#include "annulus/characteristic.hpp"

using namespace annulus;

TEST_CASE("problem I regimes around the complex threshold") {
  const double m = 2.0;
  const int n = 0;
  const double lc = complex_threshold_problem1_d2(m, n);
  CHECK(roots_problem1_d2(m, n, 0.5 * lc).regime == Regime::RealDistinct);
  CHECK(roots_problem1_d2(m, n, 2.0 * lc + 1.0).regime == Regime::ComplexPair);
}

TEST_CASE("roots come in pairs symmetric about the shift") {
  for (double lambda : {0.2, 5.0, 50.0}) {
    const auto rq = roots_problem1_gen(5, 1, lambda);
    const auto r = rq.roots();
    std::complex<double> sum = 0.0;
    for (auto z : r) sum += z;
    CHECK(std::abs(sum - 4.0 * rq.shift) < 1e-10);
  }
}

TEST_CASE("repeated and imaginary regimes of problem II in the plane") {
  // m = 2, n = 0, mu = 12 sits on the double-root locus with w < 0
  const auto rq = roots_problem2_d2(2.0, 0, 12.0);
  CHECK(rq.regime == Regime::ImaginaryPairs);
  CHECK(rq.degeneracy == Degeneracy::DoubleDouble);
  for (auto z : rq.roots()) {
    CHECK(z.real() == doctest::Approx(1.0));
    CHECK(std::abs(z.imag()) == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("d = 4, n = 0 has no gradient threshold") {
  CHECK_THROWS_AS(roots_problem2_gen(4, 0, 1.0), std::domain_error);
}

TEST_CASE("regime names") {
  CHECK(std::string(to_string(Regime::RealDistinct)) != std::string(to_string(Regime::ComplexPair)));
}

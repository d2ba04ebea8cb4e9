#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "annulus/biharmonic.hpp"

using namespace annulus;
using std::numbers::pi;

namespace {

BiharmonicFun random_fun(std::uint64_t seed, int n_max) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  BiharmonicFun f;
  f.alpha = N(rng);
  f.beta = N(rng);
  for (int n = -n_max; n <= n_max; ++n) {
    f.a[n] = {N(rng), n == 0 ? 0.0 : N(rng)};
    f.b[n] = {N(rng), n == 0 ? 0.0 : N(rng)};
  }
  return f;
}

}  // namespace

TEST_CASE("parse reads coefficient lines and rejects junk") {
  const auto f = BiharmonicFun::parse("# comment\nalpha 0.5\nbeta -1\na 2 1 0.5\nb -1 0 2\n");
  CHECK(f.alpha == 0.5);
  CHECK(f.beta == -1.0);
  CHECK(f.a.at(2) == std::complex<double>(1.0, 0.5));
  CHECK(f.b.at(-1) == std::complex<double>(0.0, 2.0));
  CHECK(f.truncation() == 2);
  CHECK_THROWS_AS(BiharmonicFun::parse("gamma 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(BiharmonicFun::parse("a x 1 1\n"), std::invalid_argument);
}

TEST_CASE("jets are biharmonic and match finite differences") {
  const auto f = random_fun(3, 3);
  const Eigen::Vector2d x(1.3, -0.7);
  const double h = 1e-4;
  const auto J = f.jet(x);
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d e = Eigen::Vector2d::Unit(i) * h;
    CHECK(J.grad(i) == doctest::Approx((f.eval(x + e) - f.eval(x - e)) / (2 * h)).epsilon(1e-6));
  }
  double bilap = 0.0;
  const double H = 1e-2;
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d e = Eigen::Vector2d::Unit(i) * H;
    bilap += (f.laplacian(x + e) - 2 * f.laplacian(x) + f.laplacian(x - e)) / (H * H);
  }
  CHECK(std::abs(bilap) < 1e-3 * (1.0 + std::abs(f.laplacian(x))));
}

TEST_CASE("closed-form norms of simple functions") {
  const Geometry g(1.0, 3.0);
  BiharmonicFun re_z;
  re_z.a[1] = 1.0;
  const double gamma = 0.3;
  const auto n1 = weighted_norms(re_z, g, gamma, Side::Outer);
  CHECK(n1.laplacian_sq == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(n1.psi_weighted == doctest::Approx(pi / (4 * gamma) * (1 - std::pow(g.a / g.b, 4 * gamma))));

  BiharmonicFun log_r;
  log_r.alpha = 1.0;
  const auto n2 = weighted_norms(log_r, g, gamma, Side::Inner);
  CHECK(n2.dz2_sq == doctest::Approx(pi * (1 / (g.a * g.a) - 1 / (g.b * g.b))));

  BiharmonicFun r2;
  r2.b[0] = 1.0;
  const auto n3 = weighted_norms(r2, g, gamma, Side::Outer);
  CHECK(n3.laplacian_sq == doctest::Approx(16 * pi * (g.b * g.b - g.a * g.a)));
}

TEST_CASE("closed form agrees with quadrature on random functions") {
  const Geometry g(0.5, 4.0);
  for (std::uint64_t s = 1; s <= 8; ++s) {
    const auto f = random_fun(s, 4);
    for (Side side : {Side::Outer, Side::Inner}) {
      const auto c = weighted_norms(f, g, 0.6, side).as_array();
      const auto q = weighted_norms_quadrature(f, g, 0.6, side).as_array();
      for (int i = 0; i < 6; ++i) CHECK(c(i) == doctest::Approx(q(i)).epsilon(1e-8));
    }
  }
}

TEST_CASE("hessian splits into the two complex parts") {
  const auto f = random_fun(21, 3);
  const auto n = weighted_norms(f, Geometry(1.0, 2.0), 0.3, Side::Outer);
  CHECK(n.hessian_sq == doctest::Approx(2.0 * (n.dz2_sq + n.dzzbar_sq)).epsilon(1e-12));
}

TEST_CASE("per-frequency blocks sum to the weighted norm") {
  const auto f = random_fun(8, 3);
  const auto n = weighted_norms(f, Geometry(1.0, 5.0), 0.6, Side::Inner);
  double sum = 0.0;
  for (double v : n.psi_blocks) sum += v;
  CHECK(sum == doctest::Approx(n.psi_weighted).epsilon(1e-12));
}

TEST_CASE("resonant weights are refused") {
  // z^{-1} and z together give an r^0 cross term, which the weight cancels exactly at gamma = 1/2
  BiharmonicFun f;
  f.a[-1] = 1.0;
  f.a[1] = 1.0;
  CHECK_THROWS_AS(weighted_norms(f, Geometry(1.0, 3.0), 0.5, Side::Outer), ResonanceError);
  CHECK_NOTHROW(weighted_norms(f, Geometry(1.0, 3.0), 0.6, Side::Outer));
}

TEST_CASE("interpolation inequality on random functions") {
  const double beta = 0.7;
  const double R = conformal_class_hypothesis(beta) + 1.0;
  const Geometry g = Geometry::from_R(R);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const auto rep = check_interpolation(random_fun(s, 3), g, beta, 0.6);
    CHECK(rep.hypothesis);
    CHECK(rep.lhs > 0.0);
    CHECK(rep.rhs > 0.0);
    CHECK(std::isfinite(rep.gamma_effective));
  }
  CHECK_THROWS(check_interpolation(random_fun(1, 2), g, 1.2, 0.6));
}

TEST_CASE("conformal class hypothesis") {
  CHECK(conformal_class_hypothesis(0.7) == doctest::Approx(2.574).epsilon(1e-3));
}

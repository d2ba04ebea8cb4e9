#include "annulus/characteristic.hpp"

#include <cmath>
#include <stdexcept>

#include "annulus/modes.hpp"

namespace annulus {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::RealDistinct: return "RealDistinct";
    case Regime::Repeated: return "Repeated";
    case Regime::ComplexPair: return "ComplexPair";
    case Regime::ComplexQuartet: return "ComplexQuartet";
    case Regime::ImaginaryPairs: return "ImaginaryPairs";
  }
  return "?";
}

std::array<std::complex<double>, 4> RootQuadruple::roots() const {
  using C = std::complex<double>;
  const double s = shift, l1 = lambda1, l2 = lambda2;
  switch (regime) {
    case Regime::RealDistinct:
    case Regime::Repeated:
      return {C(s + l1), C(s - l1), C(s + l2), C(s - l2)};
    case Regime::ComplexPair:
      return {C(s + l1), C(s - l1), C(s, l2), C(s, -l2)};
    case Regime::ComplexQuartet:
      return {C(s + l1, l2), C(s + l1, -l2), C(s - l1, l2), C(s - l1, -l2)};
    case Regime::ImaginaryPairs:
      return {C(s, l1), C(s, -l1), C(s, l2), C(s, -l2)};
  }
  return {};
}

RootQuadruple biquadratic_roots(double p, double q, double disc, double shift) {
  RootQuadruple r;
  r.p = p;
  r.q = q;
  r.disc = disc;
  r.shift = shift;
  if (disc < 0.0) {
    const double sq = std::sqrt(q);
    r.regime = Regime::ComplexQuartet;
    r.lambda1 = std::sqrt(std::max(0.0, (sq + p) / 2.0));
    r.lambda2 = std::sqrt(std::max(0.0, (sq - p) / 2.0));
    return r;
  }
  if (disc == 0.0) {
    r.degeneracy = p == 0.0 ? Degeneracy::Quadruple : Degeneracy::DoubleDouble;
    r.regime = p >= 0.0 ? Regime::Repeated : Regime::ImaginaryPairs;
    r.lambda1 = r.lambda2 = std::sqrt(std::abs(p));
    return r;
  }
  const double sd = std::sqrt(disc);
  if (q < 0.0) {
    const double wp = p + sd;
    r.regime = Regime::ComplexPair;
    r.lambda1 = std::sqrt(wp);
    r.lambda2 = std::sqrt(-q / wp);
  } else if (q == 0.0) {
    if (p > 0.0) {
      r.regime = Regime::Repeated;
      r.lambda1 = std::sqrt(2.0 * p);
    } else {
      r.regime = Regime::ImaginaryPairs;
      r.lambda1 = std::sqrt(-2.0 * p);
    }
    r.lambda2 = 0.0;
  } else if (p > 0.0) {
    const double wp = p + sd;
    r.regime = Regime::RealDistinct;
    r.lambda1 = std::sqrt(wp);
    r.lambda2 = std::sqrt(q / wp);
  } else {
    const double wm = p - sd;
    r.regime = Regime::ImaginaryPairs;
    r.lambda1 = std::sqrt(-wm);
    r.lambda2 = std::sqrt(-q / wm);
  }
  return r;
}

Biquadratic biquadratic_problem1_d2(double m, int n) {
  if (m < 1.0) throw std::invalid_argument("m must be at least 1");
  const double n2 = double(n) * n;
  return {m * m + n2, m * m - n2, 1.0 + n2, 1.0};
}

Biquadratic biquadratic_problem2_d2(double m, int n) { return biquadratic_problem1_d2(m, n); }

Biquadratic biquadratic_gen(int d, int n) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  if (n < 0) throw std::invalid_argument("mode index must be nonnegative");
  const double j = 2.0 * n + d - 2.0;
  const double c = 1.0 - j * j / 4.0;
  const double s = (d - 4) / 2.0;
  return {2.0 - c, c, s * s + harmonic_eigenvalue(d, n), -s};
}

double complex_threshold_problem1_d2(double m, int n) {
  const double t = m * m - double(n) * n;
  return t * t;
}

double complex_threshold_problem1_gen(int d, int n) {
  const double c = biquadratic_gen(d, n).c;
  return c * c;
}

double complex_threshold_problem2_d2(double m, int n) {
  return complex_threshold_problem1_d2(m, n) / (1.0 + double(n) * n);
}

double complex_threshold_problem2_gen(int d, int n) {
  const double k = harmonic_eigenvalue(d, n);
  const double num = double(d) * (d - 4) + 4.0 * k;
  const double den = 4.0 * ((d - 4.0) * (d - 4.0) + 4.0 * k);
  if (den == 0.0) return 0.0;
  return num * num / den;
}

RootQuadruple roots_problem1_d2(double m, int n, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  const auto b = biquadratic_problem1_d2(m, n);
  const double q = b.c * b.c - lambda;
  const double disc = lambda + 4.0 * m * m * double(n) * n;
  return biquadratic_roots(b.p0, q, disc, b.shift);
}

RootQuadruple roots_problem1_gen(int d, int n, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  const auto b = biquadratic_gen(d, n);
  const double j = 2.0 * n + d - 2.0;
  const double q = b.c * b.c - lambda;
  return biquadratic_roots(b.p0, q, j * j + lambda, b.shift);
}

RootQuadruple roots_problem2_d2(double m, int n, double mu) {
  if (mu < 0.0) throw std::invalid_argument("mu must be nonnegative");
  const auto b = biquadratic_problem2_d2(m, n);
  const double p = b.p0 - mu / 2.0;
  double q = b.c * b.c - mu * b.g;
  if (mu == complex_threshold_problem2_d2(m, n)) q = 0.0;
  const double m2 = m * m, n2 = double(n) * n;
  const double disc = n == 0 ? mu * (mu - 4.0 * (m2 - 1.0)) / 4.0
                             : (16.0 * m2 * n2 - 4.0 * (m2 - 1.0) * mu + mu * mu) / 4.0;
  return biquadratic_roots(p, q, disc, b.shift);
}

RootQuadruple roots_problem2_gen(int d, int n, double mu) {
  if (d < 3) throw std::invalid_argument("dimension must be at least 3");
  if (mu < 0.0) throw std::invalid_argument("mu must be nonnegative");
  if (d == 4 && n == 0) throw std::domain_error("d = 4, n = 0 has an exact closed form");
  const auto b = biquadratic_gen(d, n);
  const double p = b.p0 - mu / 2.0;
  double q = b.c * b.c - mu * b.g;
  if (mu == complex_threshold_problem2_gen(d, n)) q = 0.0;
  const double e = mu - 2.0 * (d - 2);
  const double disc = (e * e + 16.0 * harmonic_eigenvalue(d, n)) / 4.0;
  return biquadratic_roots(p, q, disc, b.shift);
}

}  // namespace annulus

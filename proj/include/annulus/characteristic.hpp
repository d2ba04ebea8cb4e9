#pragma once

#include <array>
#include <complex>

#include "annulus/geometry.hpp"

namespace annulus {

// Roots are shift + rho with rho^2 = w solving w^2 - 2 p w + q = 0.
// ComplexQuartet and ImaginaryPairs extend the three classical regimes for the
// parameter ranges where w is complex or both values of w are negative.
enum class Regime { RealDistinct, Repeated, ComplexPair, ComplexQuartet, ImaginaryPairs };
enum class Degeneracy { None, DoubleDouble, Quadruple };

const char* to_string(Regime r);

struct RootQuadruple {
  Regime regime = Regime::RealDistinct;
  Degeneracy degeneracy = Degeneracy::None;
  double shift = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double p = 0.0;
  double q = 0.0;
  double disc = 0.0;

  std::array<std::complex<double>, 4> roots() const;
};

RootQuadruple biquadratic_roots(double p, double q, double disc, double shift);

RootQuadruple roots_problem1_d2(double m, int n, double lambda);
RootQuadruple roots_problem1_gen(int d, int n, double lambda);
RootQuadruple roots_problem2_d2(double m, int n, double mu);
RootQuadruple roots_problem2_gen(int d, int n, double mu);

// Reduced coefficients of the biquadratic for each projection.
struct Biquadratic {
  double p0;     // p at zero eigenvalue
  double c;      // q = c^2 - lambda (problem I) or c^2 - mu * g (problem II)
  double g;      // gradient weight s^2 + k (problem II)
  double shift;
};

Biquadratic biquadratic_problem1_d2(double m, int n);
Biquadratic biquadratic_gen(int d, int n);
Biquadratic biquadratic_problem2_d2(double m, int n);

double complex_threshold_problem1_d2(double m, int n);
double complex_threshold_problem1_gen(int d, int n);
double complex_threshold_problem2_d2(double m, int n);
double complex_threshold_problem2_gen(int d, int n);

}  // namespace annulus

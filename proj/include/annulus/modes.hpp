#pragma once

#include <complex>

#include "annulus/geometry.hpp"

namespace annulus {

enum class RhsKind { EigenWeightL2, EigenWeightGradient };

// Y'''' + c3 Y''' + c2 Y'' + c1 Y' + (c0 + offset) Y = lambda Y in t = log r.
// For the gradient-weighted problem mu is folded into the coefficients and lambda is zero.
struct ProjectedODE {
  double c4 = 1.0;
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double offset = 0.0;
  RhsKind rhs = RhsKind::EigenWeightL2;
  double m = 1.0;
  int d = 2;
  int n = 0;
  double mu = 0.0;

  template <typename Scalar>
  Scalar characteristic(const Scalar& r, double lambda = 0.0) const {
    return (((c4 * r + c3) * r + c2) * r + c1) * r + (c0 + offset - lambda);
  }
};

ProjectedODE project_problem1_d2(double m, int n);
ProjectedODE project_bilaplacian_d(int d, int n);
ProjectedODE project_problem2_d2(double m, int n, double mu);
ProjectedODE project_problem2_d(int d, int n, double mu);

// n(n + d - 2), the spherical-harmonic eigenvalue
inline double harmonic_eigenvalue(int d, int n) { return double(n) * (n + d - 2); }

}  // namespace annulus

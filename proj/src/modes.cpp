#include "annulus/modes.hpp"

#include <stdexcept>

namespace annulus {

ProjectedODE project_problem1_d2(double m, int n) {
  if (m < 1.0) throw std::invalid_argument("m must be at least 1");
  const double s = m * m + double(n) * n;
  const double t = m * m - double(n) * n - 1.0;
  ProjectedODE ode;
  ode.c3 = -4.0;
  ode.c2 = -2.0 * (s - 3.0);
  ode.c1 = 4.0 * (s - 1.0);
  ode.offset = t * t - 4.0 * double(n) * n;
  ode.m = m;
  ode.n = n;
  return ode;
}

ProjectedODE project_bilaplacian_d(int d, int n) {
  if (d < 3) throw std::invalid_argument("bilaplacian projection needs d >= 3");
  if (n < 0) throw std::invalid_argument("mode index must be nonnegative");
  const double k = harmonic_eigenvalue(d, n);
  ProjectedODE ode;
  ode.c3 = 2.0 * (d - 4);
  ode.c2 = (d - 1.0) * (d - 9.0) + 11.0 - 2.0 * k;
  ode.c1 = -2.0 * ((d - 1.0) * (d - 5.0) + 3.0 + (d - 4.0) * k);
  ode.offset = k * k + 2.0 * (d - 4) * k;
  ode.d = d;
  ode.n = n;
  return ode;
}

ProjectedODE project_problem2_d2(double m, int n, double mu) {
  if (m < 1.0) throw std::invalid_argument("m must be at least 1");
  if (mu < 0.0) throw std::invalid_argument("mu must be nonnegative");
  const double s = m * m + double(n) * n;
  const double t = m * m - double(n) * n - 1.0;
  ProjectedODE ode;
  ode.c3 = -4.0;
  ode.c2 = -(2.0 * (s - 3.0) - mu);
  ode.c1 = 4.0 * (s - 1.0) - 2.0 * mu;
  ode.c0 = t * t - (4.0 + mu) * double(n) * n;
  ode.rhs = RhsKind::EigenWeightGradient;
  ode.m = m;
  ode.n = n;
  ode.mu = mu;
  return ode;
}

ProjectedODE project_problem2_d(int d, int n, double mu) {
  if (d < 3) throw std::invalid_argument("projection needs d >= 3");
  if (n < 0) throw std::invalid_argument("mode index must be nonnegative");
  if (mu < 0.0) throw std::invalid_argument("mu must be nonnegative");
  const double k = harmonic_eigenvalue(d, n);
  ProjectedODE ode;
  ode.c3 = 2.0 * (d - 4);
  ode.c2 = double(d) * d - 10.0 * d + 20.0 - 2.0 * k + mu;
  ode.c1 = -(d - 4.0) * (2.0 * (d - 2) + 2.0 * k - mu);
  ode.c0 = k * k + (2.0 * (d - 4) - mu) * k;
  ode.rhs = RhsKind::EigenWeightGradient;
  ode.d = d;
  ode.n = n;
  ode.mu = mu;
  return ode;
}

}  // namespace annulus

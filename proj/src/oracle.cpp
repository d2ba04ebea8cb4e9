#include "annulus/oracle.hpp"

#include <numbers>

#include "annulus/characteristic.hpp"

namespace annulus {

TransformedForm transformed_forms(Problem problem, double m, int n) {
  if (m < 1.0) throw std::invalid_argument("m must be at least 1");
  TransformedForm f;
  f.c1 = 2.0 * m;
  f.c0 = m * m - double(n) * n;
  f.l2_denominator = problem == Problem::WeightedL2;
  if (!f.l2_denominator) {
    f.s = -1.0;
    f.k = double(n) * n;
  }
  return f;
}

TransformedForm transformed_forms_dimd(Problem problem, int d, int n) {
  const auto b = biquadratic_gen(d, n);
  TransformedForm f;
  f.c1 = 2.0;
  f.c0 = b.c;
  f.l2_denominator = problem == Problem::WeightedL2;
  if (!f.l2_denominator) {
    f.s = (d - 4) / 2.0;
    f.k = double(n) * (n + d - 2);
  }
  return f;
}

double rayleigh_quotient(const DiscreteForm<double>& form, const Eigen::VectorXd& z) {
  return z.dot(form.A * z) / z.dot(form.B * z);
}

namespace {

int count_below(const DiscreteForm<double>& form, double& sigma) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    BandLDLT<double> f(shifted(form.A, form.B, sigma));
    if (f.ok) return f.negatives;
    sigma *= 1.0 + 1e-13;
  }
  throw std::runtime_error("banded factorization broke down repeatedly");
}

}  // namespace

OracleSolution smallest_eig(const DiscreteForm<double>& form, int index) {
  const int n = form.A.size();
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 1.0, double(n)) / double(form.N);
  Eigen::VectorXd probe = (std::numbers::pi * t).array().sin().square().matrix();
  double lo = 0.0, hi = rayleigh_quotient(form, probe);
  while (count_below(form, hi) < index + 1) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::runtime_error("eigenvalue bracket diverged");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (count_below(form, mid) >= index + 1) hi = mid;
    else lo = mid;
  }
  // inverse iteration polishes the eigenvector at the bracketed shift
  double sigma = lo - 1e-10 * hi;
  BandLDLT<double> fac(shifted(form.A, form.B, sigma));
  if (!fac.ok) throw std::runtime_error("shifted factorization broke down");
  Eigen::VectorXd x = probe;
  double value = hi, prev = 0.0;
  for (int it = 0; it < 500; ++it) {
    x = fac.solve(form.B * x);
    x /= std::sqrt(x.dot(form.B * x));
    value = rayleigh_quotient(form, x);
    if (it > 0 && std::abs(value - prev) <= 1e-12 * std::abs(value)) break;
    prev = value;
  }
  OracleSolution sol;
  sol.value = value;
  sol.z = x;
  sol.h = form.h;
  sol.N = form.N;
  return sol;
}

OracleSolution oracle_solve(Problem problem, double m, int n, const Geometry& g, int N, int index) {
  const auto f = g.d == 2 ? transformed_forms(problem, m, n) : transformed_forms_dimd(problem, g.d, n);
  return smallest_eig(discretize<double>(f, g.conformal_class(), N), index);
}

double oracle_eigenvalue(Problem problem, double m, int n, const Geometry& g, int N) {
  return oracle_solve(problem, m, n, g, N).value;
}

}  // namespace annulus

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "annulus/characteristic.hpp"
#include "annulus/geometry.hpp"

namespace annulus {

class BracketError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Clamped determinant for roots shift +- lambda1, shift +- i theta / R with
// lambda1^2 = 2 p + (theta / R)^2, divided by exp(2 lambda1 R).
template <typename Scalar>
Scalar psi(const Scalar& theta, const Scalar& p, const Scalar& R) {
  using std::cos;
  using std::exp;
  using std::sin;
  using std::sqrt;
  const Scalar s = sqrt(Scalar(2) * p * R * R + theta * theta);
  const Scalar e = exp(-s);
  const Scalar b2 = Scalar(1) / (R * R);
  return b2 * ((e * e + Scalar(1)) * cos(theta) - Scalar(2) * e) * theta * s -
         p * (Scalar(1) - e * e) * sin(theta);
}

double psi_problem1(double theta, double m, int n, double R);
double psi_problem1_naive(double theta, double m, int n, double R);

struct ZeroResult {
  double theta = 0.0;
  bool proven = false;
};

ZeroResult first_zero_psi(double p, double R, bool force = false);
ZeroResult first_zero_problem1(double m, int n, double R, bool force = false);
std::vector<double> zeros_psi(double p, double R, int k_max);
std::vector<double> zeros_problem1(double m, int n, double R, int k_max, bool force = false);

// lambda = c^2 + (2 p0 + l2^2) l2^2 with l2 = theta / R
double eigenvalue_from_theta(const Biquadratic& b, double theta, double R);

double det_case1(double x, double lambda1, double lambda2);
double det_case2(double x, double alpha);
double secular_d4_n0(double theta);

// Gradient-weighted problem parametrised by theta = lambda2 R.
struct Problem2Point {
  double value = 0.0;
  double mu = 0.0;
  double p = 0.0;
  bool in_regime = false;
};

double mu_from_theta(const Biquadratic& b, double theta, double R);
Problem2Point secular_problem2(const Biquadratic& b, double theta, double R);
Problem2Point secular_problem2(double theta, double m, int n, double R);
Problem2Point secular_problem2_gen(double theta, int d, int n, double R);

// Clamped determinant for any biquadratic, scaled and sign-corrected so that it
// is continuous across double roots of w. Zeros are the clamped eigenvalues.
double clamped_secular(double p, double q, double R);

// d = 2 gradient problem with n = 0 below 4(m^2 - 1): roots 1 +- alpha +- i beta.
enum class N0Branch { First, Second };
double p2_n0_equality(double mu, double m, double R, N0Branch branch);
double p2_n0_equality_printed(double mu, double m, double R, N0Branch branch);

enum class N0Subcase { Below, Critical, Above };
struct N0Repeated {
  N0Subcase subcase = N0Subcase::Below;
  double determinant = 0.0;
  bool solution_free = true;
};
N0Repeated p2_n0_repeated(double m, const Geometry& g);

double alternative_bound_I(double m, double R);
double alternative_bound_II(double m, double R);

}  // namespace annulus

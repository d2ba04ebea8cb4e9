#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "annulus/geometry.hpp"

namespace annulus {

class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters shared by the registered inequalities; each one reads the fields it needs.
struct InequalityParams {
  double m = 1.0;
  int d = 2;
  double beta = 0.75;
  double gamma = 0.75;
  double alpha = 0.5;
};

struct InequalityInfo {
  std::string name;
  std::string statement;
  bool eigen_type = false;  // lower bound on a Rayleigh quotient, tightness applies
};

const std::vector<InequalityInfo>& inequality_registry();
const InequalityInfo& inequality_info(const std::string& name);

// Whether (g, params) lies in the hypothesis region; `why` names the failing condition.
bool inequality_hypothesis(const std::string& name, const Geometry& g, const InequalityParams& p,
                           std::string* why = nullptr);

// Per-mode radial profile Y(t) = exp(c t) Z(t) with t = log r on [log a, log b].
// Clamped profiles are s^2 (1-s)^2 P(s) on a random sub-interval and vanish elsewhere.
// Unclamped ones add the homogeneous solutions r^{+-n}, r^{2+-n} of the mode.
struct TestFunction {
  int mode = 0;
  bool clamped = true;
  double t0 = 0.0;
  double t1 = 1.0;
  Eigen::VectorXd poly;       // coefficients of P in powers of (2s - 1)
  Eigen::VectorXd exp_rates;  // extra terms exp(rate (t - anchor)) for unclamped profiles
  Eigen::VectorXd exp_coeffs;
  std::uint64_t seed = 0;

  // Z, Z', Z'' with respect to t.
  Eigen::Array3d jet(double t) const;
};

TestFunction random_test_function(std::uint64_t seed, const Geometry& g, int n_max, bool clamped = true,
                                  double balance = 0.0);

// Smallest R allowed by the corollary to the second eigenvalue problem in the plane.
double corollary_B_threshold(double m);

struct VerifyReport {
  std::string name;
  InequalityParams params;
  double R = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int violations = 0;
  double min_ratio = 0.0;      // bound side over the other, scaled so that >= 1 means the inequality holds
  double min_quotient = 0.0;   // raw Rayleigh quotient for eigen-type inequalities
  double constant = 0.0;       // the registered constant at these parameters
  double max_effective_constant = 0.0;  // interp-weighted only
  int worst_trial = -1;
  int worst_mode = 0;
  bool hypothesis = true;
  bool forced = false;
};

VerifyReport check_inequality(const std::string& name, const Geometry& g, const InequalityParams& p, int trials,
                              std::uint64_t seed = 1, bool force = false, int threads = 1);

struct TightnessReport {
  std::string name;
  int mode = 0;
  double eigenvalue = 0.0;  // secular value at the minimising mode
  double constant = 0.0;
  double ratio = 0.0;       // quotient of the interpolated oracle vector over the constant
  double expected = 0.0;    // eigenvalue / constant
  double rel_gap = 0.0;
};

// Feeds the oracle minimiser, interpolated by a clamped cubic spline, through the same forms.
TightnessReport tightness(const std::string& name, const Geometry& g, const InequalityParams& p, int N = 2000);

}  // namespace annulus

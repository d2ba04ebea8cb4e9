#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "annulus/characteristic.hpp"
#include "annulus/geometry.hpp"

namespace annulus {

struct EigenResult {
  double value = 0.0;
  double theta_star = 0.0;
  Regime regime = Regime::ComplexPair;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool bracket_proven = false;
  int mode = 0;
  double m = 1.0;
  Problem problem = Problem::WeightedL2;
  Geometry geometry;
};

// Smallest clamped eigenvalue of one projected biquadratic family.
struct SecularSolution {
  double value = 0.0;
  double theta = 0.0;
  Regime regime = Regime::ComplexPair;
  bool theta_path = true;
  bool theta_bracket = false;
};

SecularSolution solve_problem1(const Biquadratic& b, double R);
SecularSolution solve_problem2(const Biquadratic& b, double R);

EigenResult lambda_mn(double m, int n, const Geometry& g);
EigenResult lambda_min_d2(int m, const Geometry& g);
EigenResult mu_mn(double m, int n, const Geometry& g);

struct MuMinD2 {
  EigenResult best;
  std::optional<EigenResult> radial;   // n = 0
  std::optional<EigenResult> matched;  // n = m
  bool ordered = true;                 // false when the two candidates are reported without a winner
};
MuMinD2 mu_min_d2(int m, const Geometry& g);

EigenResult lambda_n_dimd(int n, const Geometry& g);
EigenResult lambda_min_dimd(const Geometry& g);
EigenResult mu_n_dimd(int n, const Geometry& g);
double mu0_dim4_exact(const Geometry& g);
EigenResult mu_min_dimd(const Geometry& g);

double lower_bound_lambda_d2(double m, int n, double R);
double upper_bound_lambda_d2(double m, int n, double R);
double lower_bound_lambda_dimd(int d, int n, double R);
double upper_bound_lambda_dimd(int d, int n, double R);
double lower_bound_mu_d2(double m, int n, double R);
double upper_bound_mu_d2(double m, int n, double R);
double lower_bound_mu_dimd(int d, int n, double R);
double upper_bound_mu_dimd(int d, int n, double R);
double assumption_II_lower_bound(double m);

struct ModeReport {
  Problem problem = Problem::WeightedL2;
  int d = 2;
  double m = 1.0;
  double R = 0.0;
  double continuous_minimizer = 0.0;
  int bound_argmin = 0;
  std::vector<std::pair<int, double>> bound_values;
  std::vector<std::pair<std::string, bool>> conditions;
  int computed_argmin = 0;
  std::vector<std::pair<int, double>> computed_values;
};

// d = 2 uses m; d >= 3 ignores it.
ModeReport minimal_mode_analysis(Problem problem, int d, double m, double R, int n_max = 10);

// Certified radial minimiser for the d = 4 bilaplacian: the n = 0 upper bound
// lies below every n >= 1 lower bound.
bool certified_radial_dim4(double R);

}  // namespace annulus

#include "annulus/geometry.hpp"

namespace annulus {

using std::numbers::pi;

double threshold_problem1(double m) {
  if (m < 1.0) throw std::invalid_argument("threshold_problem1 needs m >= 1");
  return pi * std::sqrt(2.0) / std::sqrt(2.0 * m - 1.0);
}

double threshold_problem1_unique(int m) {
  if (m < 1) throw std::invalid_argument("threshold_problem1_unique needs m >= 1");
  const double mm = m;
  const double t = 12.0 * mm * mm + 4.0 * mm - 1.0;
  const double w = 2.0 * mm - 1.0;
  return std::sqrt(pi / 2.0) / w * std::sqrt(t + std::sqrt(t * t + 60.0 * w * w));
}

double threshold_dim4() { return 15.0 * std::sqrt(4.0 + 3.0 * pi * (pi + 1.0)) / 2.0; }

double threshold_dimd_problem1() { return 15.0 * std::sqrt(2.0 + 1.5 * pi * (pi + 1.0)); }

// below this the n = 0 upper bound no longer sits under the n = 1 lower bound
double threshold_dim4_switch() { return pi * std::sqrt(5.0 / 3.0); }

double bracket_validity(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("bracket validity needs a positive coefficient");
  return 5.0 / std::sqrt(2.0 * p);
}

bool assumption_II(double m, int n) {
  if (m < std::sqrt(2.0)) return false;
  const double m2 = m * m;
  const double bound = m2 * (m2 - 2.0) / (2.0 * m2 + 1.0 + std::sqrt(5.0 * m2 * m2 + 2.0 * m2 + 1.0));
  return double(n) * n <= bound;
}

double threshold_problem2_assumptionI(double m, int n) {
  if (m < 1.0) throw std::invalid_argument("assumption thresholds need m >= 1");
  if (assumption_II(m, n)) return 0.0;
  const double m2 = m * m, n2 = double(n) * n;
  const double D = n2 * n2 + 2.0 * (2.0 * m2 + 1.0) * n2 - m2 * (m2 - 2.0);
  if (!(D > 0.0)) throw std::domain_error("assumption I radical undefined for these (m, n)");
  const double c = 50.0 + pi * pi;
  const double u = 25.0 * (n2 + 1.0);
  const double inner = 525.0 * (n2 + 1.0) * (n2 + 1.0) + 16.0 * pi * pi * c * D;
  return pi * std::sqrt((u + std::sqrt(inner)) / (2.0 * c * D));
}

}  // namespace annulus

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace annulus {

enum class Problem { WeightedL2, WeightedGradient };

inline const char* to_string(Problem p) { return p == Problem::WeightedL2 ? "I" : "II"; }

struct Geometry {
  double a = 1.0;
  double b = std::exp(1.0);
  int d = 2;

  Geometry() = default;
  Geometry(double a_, double b_, int d_ = 2) : a(a_), b(b_), d(d_) {
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) throw std::invalid_argument("annulus requires 0 < a < b < inf");
    if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  }

  static Geometry from_R(double R, int d = 2) {
    if (!(R > 0.0)) throw std::invalid_argument("conformal class must be positive");
    return Geometry(1.0, std::exp(R), d);
  }

  double conformal_class() const { return std::log(b / a); }
  Geometry with_dimension(int dd) const { return Geometry(a, b, dd); }
};

inline double conformal_class(const Geometry& g) { return g.conformal_class(); }

double threshold_problem1(double m);
double threshold_problem1_unique(int m);
double threshold_dim4();
double threshold_dimd_problem1();
double threshold_dim4_switch();
double bracket_validity(double p);
double threshold_problem2_assumptionI(double m, int n);
bool assumption_II(double m, int n);

}  // namespace annulus

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "annulus/geometry.hpp"

namespace annulus {

// psi = alpha log r + Re(sum a_n z^n) + r^2 (beta log r + Re(sum b_n z^n))
struct BiharmonicFun {
  double alpha = 0.0;
  double beta = 0.0;
  std::map<int, std::complex<double>> a;
  std::map<int, std::complex<double>> b;

  int truncation() const;

  struct Jet {
    double value = 0.0;
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
  };
  Jet jet(const Eigen::Vector2d& x) const;

  double eval(const Eigen::Vector2d& x) const { return jet(x).value; }
  double laplacian(const Eigen::Vector2d& x) const { return jet(x).hess.trace(); }

  static BiharmonicFun parse(const std::string& text);
};

class ResonanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Side { Outer, Inner };

struct NormRecord {
  double grad_weighted = 0.0;  // int |grad psi|^2 / |x|^2 w^{2 gamma}
  double psi_weighted = 0.0;   // int psi^2 / |x|^4 w^{4 gamma}
  double laplacian_sq = 0.0;   // int (Delta psi)^2
  double dz2_sq = 0.0;         // int 4 |d_z^2 psi|^2
  double hessian_sq = 0.0;     // int |grad^2 psi|^2
  double dzzbar_sq = 0.0;      // int 4 |d_z d_zbar psi|^2
  std::vector<double> psi_blocks;  // per-frequency parts of psi_weighted, k = 0..n_max

  Eigen::Array<double, 6, 1> as_array() const;
};

// w = |x| / b on the outer side and a / |x| on the inner side.
NormRecord weighted_norms(const BiharmonicFun& psi, const Geometry& g, double gamma, Side side);
NormRecord weighted_norms_quadrature(const BiharmonicFun& psi, const Geometry& g, double gamma, Side side,
                                     double rel_tol = 1e-12, int theta_points = 64);

double conformal_class_hypothesis(double beta);

struct InterpolationReport {
  double lhs = 0.0;
  double rhs = 0.0;  // right-hand side with Gamma = 1
  double ratio = 0.0;
  double gamma_effective = 0.0;
  bool hypothesis = false;
};

InterpolationReport check_interpolation(const BiharmonicFun& psi, const Geometry& g, double beta, double gamma);

}  // namespace annulus

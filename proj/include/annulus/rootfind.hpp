#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace annulus {

// Bisection on a bracket with f(lo) and f(hi) of opposite signs.
template <typename F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-13, int max_iter = 400) {
  double flo = f(lo);
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid) || mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Sign changes of f on a uniform grid of [lo, hi], returned as brackets.
template <typename F>
std::vector<std::pair<double, double>> sign_changes(F&& f, double lo, double hi, int steps,
                                                    std::size_t max_count = 0) {
  std::vector<std::pair<double, double>> out;
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double x1 = lo + (hi - lo) * i / steps;
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0) && std::isfinite(f0) && std::isfinite(f1)) {
      out.emplace_back(x0, x1);
      if (max_count && out.size() >= max_count) break;
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

}  // namespace annulus

#include "annulus/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "annulus/rootfind.hpp"
#include "annulus/secular.hpp"

namespace annulus {

using std::numbers::pi;

namespace {

double X_of(double R) { return pi * pi / (R * R); }

Regime classify(const Biquadratic& b, double mu) {
  const double p = b.p0 - mu / 2.0;
  const double q = b.c * b.c - mu * b.g;
  return biquadratic_roots(p, q, p * p - q, b.shift).regime;
}

}  // namespace

SecularSolution solve_problem1(const Biquadratic& b, double R) {
  const auto z = first_zero_psi(b.p0, R, true);
  SecularSolution s;
  s.theta = z.theta;
  s.theta_bracket = z.proven;
  s.value = eigenvalue_from_theta(b, z.theta, R);
  s.regime = Regime::ComplexPair;
  return s;
}

SecularSolution solve_problem2(const Biquadratic& b, double R) {
  if (!(b.g > 0.0)) throw std::domain_error("degenerate gradient weight; use the exact handler");
  const double mu_c = b.c * b.c / b.g;
  auto h = [&](double mu) {
    const double p = b.p0 - mu / 2.0;
    return clamped_secular(p, b.c * b.c - mu * b.g, R);
  };

  // Below the complex threshold: scan the clamped determinant, stepping around
  // the points where the two values of w coincide.
  if (mu_c > 0.0) {
    std::vector<double> pts{mu_c * 1e-9, mu_c * (1.0 - 1e-9)};
    const double A = 0.25, B = b.g - b.p0, C = b.p0 * b.p0 - b.c * b.c;
    const double dd = B * B - 4.0 * A * C;
    if (dd >= 0.0) {
      for (double sg : {-1.0, 1.0}) {
        const double r = (-B + sg * std::sqrt(dd)) / (2.0 * A);
        const double eps = 1e-7 * std::max(1.0, std::abs(r));
        if (r - eps > pts.front() && r + eps < pts.back()) {
          pts.push_back(r - eps);
          pts.push_back(r + eps);
        }
      }
    }
    std::sort(pts.begin(), pts.end());
    const int total = int(std::clamp(8.0 * mu_c * R * R / 4.0 + 4000.0, 4000.0, 400000.0));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double lo = pts[i], hi = pts[i + 1];
      const int steps = std::max(8, int(total * (hi - lo) / mu_c));
      const bool straddle = hi - lo < 1e-5 * std::max(1.0, hi);
      auto br = sign_changes(h, lo, hi, straddle ? 1 : steps, 1);
      if (!br.empty()) {
        SecularSolution s;
        s.value = bisect(h, br.front().first, br.front().second);
        s.theta_path = false;
        s.regime = classify(b, s.value);
        return s;
      }
    }
  }

  // Complex-pair regime, parametrised by theta = lambda2 R.
  auto f = [&](double t) { return secular_problem2(b, t, R).value; };
  for (double hi = 4.0 * pi; hi <= 256.0 * pi; hi *= 2.0) {
    const auto brs = sign_changes(f, hi * 1e-7, hi, int(256 * hi / pi));
    if (brs.empty()) continue;
    SecularSolution best;
    best.value = std::numeric_limits<double>::infinity();
    for (auto [lo, up] : brs) {
      const double t = bisect(f, lo, up);
      const double mu = mu_from_theta(b, t, R);
      if (mu < best.value) {
        best.value = mu;
        best.theta = t;
      }
    }
    const double p = b.p0 - best.value / 2.0;
    best.theta_bracket = best.theta > pi && best.theta < 2.0 * pi && psi(pi, p, R) < 0.0 &&
                         psi(2.0 * pi, p, R) > 0.0;
    best.regime = Regime::ComplexPair;
    return best;
  }
  throw std::runtime_error("no eigenvalue found for the gradient-weighted problem");
}

double lower_bound_lambda_d2(double m, int n, double R) {
  const double X = X_of(R);
  return ((m - n) * (m - n) + X) * ((m + n) * (m + n) + X);
}

double upper_bound_lambda_d2(double m, int n, double R) {
  const double X = 4.0 * X_of(R);
  return ((m - n) * (m - n) + X) * ((m + n) * (m + n) + X);
}

double lower_bound_lambda_dimd(int d, int n, double R) {
  const double X = X_of(R), u = n + d / 2.0, v = n + (d - 4) / 2.0;
  return (u * u + X) * (v * v + X);
}

double upper_bound_lambda_dimd(int d, int n, double R) {
  const double X = 4.0 * X_of(R), u = n + d / 2.0, v = n + (d - 4) / 2.0;
  return (u * u + X) * (v * v + X);
}

double lower_bound_mu_d2(double m, int n, double R) {
  const double X = X_of(R);
  return (2.0 * (m + n) * (m + n) + X) * (2.0 * (m - n) * (m - n) + X) / (4.0 * (double(n) * n + 1.0) + 2.0 * X);
}

double upper_bound_mu_d2(double m, int n, double R) {
  const double X = X_of(R);
  return ((m + n) * (m + n) + 2.0 * X) * ((m - n) * (m - n) + 2.0 * X) / (double(n) * n + 1.0 + 2.0 * X);
}

namespace {

double mu_bound_dimd(int d, int n, double R, double lin, double quad, double den) {
  const double X = X_of(R), k = double(n) * (n + d - 2);
  const double t = double(d) * (d - 4) + 4.0 * k;
  const double P = (d - 2.0) * (d - 2.0) + 4.0 + 4.0 * k;
  return (t * t + P * lin * X + quad * X * X) / (4.0 * (d - 4.0) * (d - 4.0) + 16.0 * k + den * X);
}

}  // namespace

double lower_bound_mu_dimd(int d, int n, double R) { return mu_bound_dimd(d, n, R, 8.0, 16.0, 16.0); }
double upper_bound_mu_dimd(int d, int n, double R) { return mu_bound_dimd(d, n, R, 64.0, 256.0, 64.0); }

double assumption_II_lower_bound(double m) { return m * m * m * m / (2.0 * (1.0 + 2.0 * m * m)); }

EigenResult lambda_mn(double m, int n, const Geometry& g) {
  const double R = g.conformal_class();
  const auto s = solve_problem1(biquadratic_problem1_d2(m, n), R);
  EigenResult r;
  r.value = s.value;
  r.theta_star = s.theta;
  r.regime = s.regime;
  r.lower_bound = lower_bound_lambda_d2(m, n, R);
  r.upper_bound = upper_bound_lambda_d2(m, n, R);
  r.bracket_proven = s.theta_bracket;
  r.mode = n;
  r.m = m;
  r.problem = Problem::WeightedL2;
  r.geometry = g;
  return r;
}

EigenResult lambda_min_d2(int m, const Geometry& g) {
  const double R = g.conformal_class();
  EigenResult best = lambda_mn(m, 0, g);
  for (int n = 1;; ++n) {
    if (n > m && lower_bound_lambda_d2(m, n, R) > best.value) break;
    const auto r = lambda_mn(m, n, g);
    if (r.value < best.value) best = r;
  }
  return best;
}

EigenResult mu_mn(double m, int n, const Geometry& g) {
  const double R = g.conformal_class();
  const auto s = solve_problem2(biquadratic_problem2_d2(m, n), R);
  EigenResult r;
  r.value = s.value;
  r.theta_star = s.theta;
  r.regime = s.regime;
  r.lower_bound = lower_bound_mu_d2(m, n, R);
  r.upper_bound = upper_bound_mu_d2(m, n, R);
  bool hyp = true;
  try {
    hyp = R >= threshold_problem2_assumptionI(m, n);
  } catch (const std::domain_error&) {
    hyp = false;
  }
  r.bracket_proven = s.theta_path && s.theta_bracket && hyp;
  r.mode = n;
  r.m = m;
  r.problem = Problem::WeightedGradient;
  r.geometry = g;
  return r;
}

MuMinD2 mu_min_d2(int m, const Geometry& g) {
  MuMinD2 out;
  out.best = mu_mn(m, 0, g);
  for (int n = 1; n <= std::max(10, 2 * m); ++n) {
    const auto r = mu_mn(m, n, g);
    if (r.value < out.best.value) out.best = r;
  }
  if (m >= 2) {
    out.radial = mu_mn(m, 0, g);
    out.matched = mu_mn(m, m, g);
    out.ordered = false;
  }
  return out;
}

EigenResult lambda_n_dimd(int n, const Geometry& g) {
  const double R = g.conformal_class();
  const int d = g.d;
  const auto s = solve_problem1(biquadratic_gen(d, n), R);
  EigenResult r;
  r.value = s.value;
  r.theta_star = s.theta;
  r.regime = s.regime;
  r.lower_bound = lower_bound_lambda_dimd(d, n, R);
  r.upper_bound = upper_bound_lambda_dimd(d, n, R);
  r.bracket_proven = s.theta_bracket && (d == 2 || R >= threshold_dimd_problem1());
  r.mode = n;
  r.problem = Problem::WeightedL2;
  r.geometry = g;
  return r;
}

EigenResult lambda_min_dimd(const Geometry& g) {
  const double R = g.conformal_class();
  EigenResult best = lambda_n_dimd(0, g);
  for (int n = 1;; ++n) {
    if (lower_bound_lambda_dimd(g.d, n, R) > best.value) break;
    const auto r = lambda_n_dimd(n, g);
    if (r.value < best.value) best = r;
  }
  return best;
}

double mu0_dim4_exact(const Geometry& g) {
  const double R = g.conformal_class();
  return 4.0 + 4.0 * pi * pi / (R * R);
}

EigenResult mu_n_dimd(int n, const Geometry& g) {
  const double R = g.conformal_class();
  const int d = g.d;
  if (d < 3) throw std::invalid_argument("mu_n_dimd needs d >= 3");
  EigenResult r;
  r.mode = n;
  r.problem = Problem::WeightedGradient;
  r.geometry = g;
  r.lower_bound = lower_bound_mu_dimd(d, n, R);
  r.upper_bound = upper_bound_mu_dimd(d, n, R);
  if (d == 4 && n == 0) {
    r.value = mu0_dim4_exact(g);
    r.theta_star = 2.0 * pi;
    r.regime = Regime::Repeated;
    r.bracket_proven = true;
    return r;
  }
  const auto s = solve_problem2(biquadratic_gen(d, n), R);
  r.value = s.value;
  r.theta_star = s.theta;
  r.regime = s.regime;
  const double k = double(n) * (n + d - 2);
  const double gap = 0.5 * (d - 2.0) * (d - 2.0) + 2.0 + 2.0 * k - s.value;
  r.bracket_proven = s.theta_path && s.theta_bracket && gap > 0.0 && R >= 5.0 * pi / std::sqrt(gap);
  return r;
}

EigenResult mu_min_dimd(const Geometry& g) {
  const double R = g.conformal_class();
  EigenResult best = mu_n_dimd(0, g);
  for (int n = 1;; ++n) {
    if (n > 10 && lower_bound_mu_dimd(g.d, n, R) > best.value) break;
    const auto r = mu_n_dimd(n, g);
    if (r.value < best.value) best = r;
  }
  return best;
}

bool certified_radial_dim4(double R) {
  return upper_bound_lambda_dimd(4, 0, R) < lower_bound_lambda_dimd(4, 1, R);
}

ModeReport minimal_mode_analysis(Problem problem, int d, double m, double R, int n_max) {
  ModeReport rep;
  rep.problem = problem;
  rep.d = d;
  rep.m = m;
  rep.R = R;
  const auto g = Geometry::from_R(R, d);
  const double X = X_of(R);
  const int lo_n = 0;

  auto computed = [&](int n) {
    if (d == 2) return problem == Problem::WeightedL2 ? lambda_mn(m, n, g).value : mu_mn(m, n, g).value;
    return problem == Problem::WeightedL2 ? lambda_n_dimd(n, g).value : mu_n_dimd(n, g).value;
  };
  double best = std::numeric_limits<double>::infinity();
  for (int n = lo_n; n <= n_max; ++n) {
    const double v = computed(n);
    rep.computed_values.emplace_back(n, v);
    if (v < best) {
      best = v;
      rep.computed_argmin = n;
    }
  }

  if (problem == Problem::WeightedL2 && d == 2) {
    const double a2 = X;
    auto f = [&](double t) { return ((m - t) * (m - t) + a2) * ((m + t) * (m + t) + a2); };
    rep.continuous_minimizer = a2 < m * m ? std::sqrt(m * m - a2) : 0.0;
    const int fl = int(std::floor(rep.continuous_minimizer));
    rep.bound_values = {{fl, f(fl)}, {fl + 1, f(fl + 1)}};
    rep.bound_argmin = f(fl) <= f(fl + 1) ? fl : fl + 1;
    rep.conditions.emplace_back("alpha2_le_2m_minus_1", a2 <= 2.0 * m - 1.0);
    rep.conditions.emplace_back("R_ge_threshold_problem1", R >= threshold_problem1(m));
    if (m == std::floor(m)) rep.conditions.emplace_back("R_ge_threshold_unique", R >= threshold_problem1_unique(int(m)));
  } else if (problem == Problem::WeightedL2) {
    const double up0 = upper_bound_lambda_dimd(d, 0, R);
    double low_rest = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n) {
      const double lb = lower_bound_lambda_dimd(d, n, R);
      rep.bound_values.emplace_back(n, lb);
      if (n >= 1) low_rest = std::min(low_rest, lb);
    }
    rep.bound_argmin = up0 < low_rest ? 0 : -1;
    rep.continuous_minimizer = 0.0;
    rep.conditions.emplace_back("radial_certified", up0 < low_rest);
    if (d == 4) rep.conditions.emplace_back("R_gt_pi_sqrt_5_3", R > threshold_dim4_switch());
    rep.conditions.emplace_back("R_ge_theorem_threshold", R >= (d == 4 ? threshold_dim4() : threshold_dimd_problem1()));
  } else if (d == 2) {
    for (int n = 0; n <= n_max; ++n) rep.bound_values.emplace_back(n, lower_bound_mu_d2(m, n, R));
    rep.bound_argmin = int(std::min_element(rep.bound_values.begin(), rep.bound_values.end(),
                                            [](auto& a, auto& b) { return a.second < b.second; }) -
                           rep.bound_values.begin());
    rep.conditions.emplace_back("candidates_unordered", m >= 2.0);
  } else {
    for (int n = 0; n <= n_max; ++n) rep.bound_values.emplace_back(n, lower_bound_mu_dimd(d, n, R));
    rep.bound_argmin = int(std::min_element(rep.bound_values.begin(), rep.bound_values.end(),
                                            [](auto& a, auto& b) { return a.second < b.second; }) -
                           rep.bound_values.begin());
    if (d == 4) {
      rep.conditions.emplace_back("radial_dominates_modes", 3.0 + 10.0 * X + 3.0 * X * X >= 4.0 * X);
    }
    if (d == 3) {
      const double alpha = 4.0 * X;
      rep.continuous_minimizer = 4.0 * std::sqrt(1.0 + alpha) - 1.0 - alpha;
      rep.conditions.emplace_back("alpha_le_7", alpha <= 7.0);
      const double f0 = 9.0 + alpha, f8 = (25.0 + 26.0 * alpha + alpha * alpha) / (9.0 + alpha);
      rep.bound_argmin = f8 <= f0 ? 1 : 0;
    }
  }
  return rep;
}

}  // namespace annulus

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "annulus/biharmonic.hpp"
#include "annulus/eigensolve.hpp"
#include "annulus/oracle.hpp"
#include "annulus/secular.hpp"
#include "annulus/verify.hpp"

using namespace annulus;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const Outcome& o) {
  fmt::print("criterion {:2d}: {}  {}\n", id, o.pass ? "PASS" : "FAIL", o.detail);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// Every secular value computed for criteria 2-5, kept for the oracle comparison.
struct GridPoint {
  Problem problem;
  double m;
  int n;
  Geometry g;
  double value;
};
std::vector<GridPoint> grid;

Outcome exact_dim4() {
  const auto t0 = Clock::now();
  double worst_formula = 0.0, worst_oracle = 0.0;
  for (double R : {5.0, 10.0, 50.0}) {
    const Geometry g = Geometry::from_R(R, 4);
    const double exact = mu0_dim4_exact(g);
    worst_formula = std::max(worst_formula, std::abs(exact - (4.0 + 4.0 * pi * pi / (R * R))));
    const double o = oracle_eigenvalue(Problem::WeightedGradient, 1.0, 0, g, 2000);
    worst_oracle = std::max(worst_oracle, std::abs(o - exact) / exact);
  }
  const double dt = seconds_since(t0);
  return {worst_formula < 1e-12 && worst_oracle <= 1e-3 && dt < 5.0,
          fmt::format("formula err {:.1e}, oracle rel gap {:.2e}, {:.2f} s", worst_formula, worst_oracle, dt)};
}

Outcome sandwich() {
  int checked = 0, bad = 0;
  for (double m : {1.0, 2.0, 3.0})
    for (int n = 0; n <= 4; ++n)
      for (double R : {10.0, 30.0, 100.0}) {
        if (!(R > bracket_validity(m * m + double(n) * n))) continue;
        const Geometry g = Geometry::from_R(R);
        const auto r = lambda_mn(m, n, g);
        const double x = pi * pi / (R * R);
        const double lo = ((m - n) * (m - n) + x) * ((m + n) * (m + n) + x);
        const double hi = ((m - n) * (m - n) + 4 * x) * ((m + n) * (m + n) + 4 * x);
        ++checked;
        if (!(lo < r.value && r.value < hi)) ++bad;
        grid.push_back({Problem::WeightedL2, m, n, g, r.value});
      }
  return {bad == 0, fmt::format("{} points, {} outside", checked, bad)};
}

Outcome minimal_mode_d2() {
  int checked = 0, bad = 0;
  std::string worst;
  for (int m = 1; m <= 3; ++m) {
    const double T = threshold_problem1_unique(m);
    for (double R : {T, 1.5 * T, 3.0 * T, std::max(100.0, 3.0 * T)}) {
      const Geometry g = Geometry::from_R(R);
      int arg = 0;
      double best = 1e300;
      for (int n = 0; n <= 10; ++n) {
        const double v = lambda_mn(m, n, g).value;
        grid.push_back({Problem::WeightedL2, double(m), n, g, v});
        if (v < best) best = v, arg = n;
      }
      ++checked;
      if (arg != m) {
        ++bad;
        worst = fmt::format(" (m={}, R={:.3f}: argmin {})", m, R, arg);
      }
    }
  }
  return {bad == 0, fmt::format("{} (m, R) pairs, {} with argmin != m{}", checked, bad, worst)};
}

Outcome radial_switch_dim4() {
  const double target = pi * std::sqrt(5.0 / 3.0);
  int mismatches = 0;
  double first_mismatch = 0.0, certified_switch = -1.0;
  bool prev_cert = false;
  for (int i = 100; i <= 800; ++i) {
    const double R = 0.01 * i;
    const Geometry g = Geometry::from_R(R, 4);
    double best = 1e300;
    int arg = 0;
    for (int n = 0; n <= 10; ++n) {
      const double v = lambda_n_dimd(n, g).value;
      if (n <= 1) grid.push_back({Problem::WeightedL2, 1.0, n, g, v});
      if (v < best) best = v, arg = n;
    }
    const bool radial = arg == 0, expected = R > target;
    if (radial != expected && std::abs(R - target) > 0.01) {
      if (mismatches++ == 0) first_mismatch = R;
    }
    const bool cert = certified_radial_dim4(R);
    if (cert && !prev_cert) certified_switch = R;
    prev_cert = cert;
  }
  return {mismatches == 0,
          fmt::format("computed argmin disagrees at {} of 701 grid points (first R={:.2f}); certified switch at "
                      "R={:.2f}, target {:.4f}",
                      mismatches, first_mismatch, certified_switch, target)};
}

Outcome constants() {
  struct Case {
    const char* label;
    double value, target;
  };
  std::vector<Case> cs;
  {
    const Geometry g = Geometry::from_R(200.0, 5);
    const auto r = lambda_n_dimd(0, g);
    grid.push_back({Problem::WeightedL2, 1.0, 0, g, r.value});
    cs.push_back({"lambda0 d5", r.value, 25.0 / 16.0});
    const auto mu = mu_min_dimd(g);
    grid.push_back({Problem::WeightedGradient, 1.0, mu.mode, g, mu.value});
    cs.push_back({"mu-min d5", mu.value, 25.0 / 4.0});
  }
  {
    const Geometry g = Geometry::from_R(200.0, 3);
    const auto mu = mu_n_dimd(1, g);
    grid.push_back({Problem::WeightedGradient, 1.0, 1, g, mu.value});
    cs.push_back({"mu1 d3", mu.value, 25.0 / 36.0});
  }
  {
    const Geometry g = Geometry::from_R(200.0, 4);
    const auto mu = mu_n_dimd(1, g);
    grid.push_back({Problem::WeightedGradient, 1.0, 1, g, mu.value});
    cs.push_back({"mu1 d4", mu.value, 3.0});
  }
  bool ok = true;
  std::string detail;
  for (const auto& c : cs) {
    const double err = std::abs(c.value - c.target);
    ok = ok && err <= 5e-2;
    detail += fmt::format("{} {:.5f} (target {:.5f}); ", c.label, c.value, c.target);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome theta_trend() {
  std::vector<double> th;
  for (double R : {20.0, 50.0, 100.0, 200.0}) th.push_back(lambda_mn(1.0, 1, Geometry::from_R(R)).theta_star);
  bool decreasing = true;
  for (size_t i = 1; i < th.size(); ++i) decreasing = decreasing && th[i] < th[i - 1];
  const double gap = th.back() - pi;
  return {decreasing && gap < 1e-8,
          fmt::format("decreasing {}, theta*(200) - pi = {:.4e} (needs < 1e-8)", decreasing ? "yes" : "no", gap)};
}

Outcome oracle_agreement() {
  const auto t0 = Clock::now();
  std::vector<double> gaps(grid.size());
  const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < grid.size(); i += nt) {
        const auto& p = grid[i];
        const double o = oracle_eigenvalue(p.problem, p.m, p.n, p.g, 2000);
        gaps[i] = std::abs(p.value - o) / p.value;
      }
    });
  for (auto& t : pool) t.join();
  const auto worst = std::max_element(gaps.begin(), gaps.end());
  const size_t wi = size_t(worst - gaps.begin());

  const Geometry g = Geometry::from_R(10.0, 4);
  const double exact = mu0_dim4_exact(g);
  const double e1 = std::abs(oracle_eigenvalue(Problem::WeightedGradient, 1.0, 0, g, 1000) - exact);
  const double e2 = std::abs(oracle_eigenvalue(Problem::WeightedGradient, 1.0, 0, g, 2000) - exact);
  const double order = std::log2(e1 / e2);
  const double dt = seconds_since(t0);
  return {*worst <= 1e-3 && order >= 1.7 && order <= 2.3 && dt < 120.0,
          fmt::format("{} points, max rel gap {:.2e} (problem {}, d={}, n={}, R={:.2f}), order {:.3f}, {:.1f} s",
                      grid.size(), *worst, to_string(grid[wi].problem), grid[wi].g.d, grid[wi].n,
                      grid[wi].g.conformal_class(), order, dt)};
}

Outcome sign_lemmas() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int bad1 = 0, bad2 = 0, bad_psi = 0, bad_d4 = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = 1.0 + 50.0 * U(rng) + 1e-9;
    const double l2 = 1e-3 + 20.0 * U(rng), l1 = l2 + 1e-9 + 20.0 * U(rng);
    if (!(det_case1(x, l1, l2) < 0.0)) ++bad1;
    const double y = 1e-9 + 50.0 * U(rng), alpha = std::sqrt(2.0) + 20.0 * U(rng);
    if (!(det_case2(y, alpha) < 0.0)) ++bad2;
  }
  for (int s = 0; s < 50; ++s) {
    const double m = 1.0 + 4.0 * U(rng);
    const int n = int(8 * U(rng));
    const double R = bracket_validity(m * m + double(n) * n) * (1.0 + 30.0 * U(rng)) + 1e-9;
    for (int i = 1; i <= 1000; ++i)
      if (!(psi_problem1(pi * i / 1000.0, m, n, R) < 0.0)) {
        ++bad_psi;
        break;
      }
  }
  for (int i = 1; i < 1000; ++i)
    if (!(secular_d4_n0(2.0 * pi * i / 1000.0) > 0.0)) ++bad_d4;
  const double z = std::abs(secular_d4_n0(2.0 * pi));
  return {bad1 == 0 && bad2 == 0 && bad_psi == 0 && bad_d4 == 0 && z <= 1e-12,
          fmt::format("case1 {} / case2 {} / psi {} / d4 {} failures, |f(2pi)| = {:.1e}", bad1, bad2, bad_psi, bad_d4,
                      z)};
}

BiharmonicFun random_biharmonic(std::mt19937_64& rng, int n_max) {
  std::normal_distribution<double> N(0.0, 1.0);
  BiharmonicFun f;
  f.alpha = N(rng);
  f.beta = N(rng);
  for (int n = -n_max; n <= n_max; ++n) {
    f.a[n] = {N(rng), n == 0 ? 0.0 : N(rng)};
    f.b[n] = {N(rng), n == 0 ? 0.0 : N(rng)};
  }
  return f;
}

Outcome biharmonic_forms() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  int resonant = 0, interp_checked = 0, interp_bad = 0;
  for (int s = 0; s < 100; ++s) {
    const auto f = random_biharmonic(rng, 8);
    const double a = 0.5 + U(rng), b = a * (1.2 + 2.0 * U(rng));
    const double gamma = 0.05 + 0.9 * U(rng);
    const Geometry g(a, b);
    const Side side = s % 2 ? Side::Inner : Side::Outer;
    try {
      const auto c = weighted_norms(f, g, gamma, side).as_array();
      const auto q = weighted_norms_quadrature(f, g, gamma, side).as_array();
      for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(c(i) - q(i)) / std::max(std::abs(q(i)), 1e-300));
    } catch (const ResonanceError&) {
      ++resonant;
    }
    const double beta = 0.55 + 0.4 * U(rng);
    const double gi = 0.45 + 0.5 * U(rng);
    const Geometry gh = Geometry::from_R(conformal_class_hypothesis(beta) * (1.0 + U(rng)));
    try {
      const auto rep = check_interpolation(f, gh, beta, gi);
      ++interp_checked;
      if (!rep.hypothesis || !std::isfinite(rep.gamma_effective) || !(rep.gamma_effective > 0.0)) ++interp_bad;
    } catch (const ResonanceError&) {
      ++resonant;
    }
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-8 && interp_bad == 0 && resonant == 0 && dt < 30.0,
          fmt::format("max rel err {:.2e}, interpolation {} / {} with finite constant, {} resonant, {:.1f} s", worst,
                      interp_checked - interp_bad, interp_checked, resonant, dt)};
}

Outcome fuzzing() {
  struct Case {
    std::string name;
    double R;
    InequalityParams p;
  };
  std::vector<Case> cases;
  auto P = [](double m, int d, double beta, double gamma, double alpha) {
    InequalityParams p;
    p.m = m;
    p.d = d;
    p.beta = beta;
    p.gamma = gamma;
    p.alpha = alpha;
    return p;
  };
  for (double m : {1.0, 2.0})
    for (double R : {5.0, 10.0, 30.0}) {
      cases.push_back({"corollary-A", R, P(m, 2, 0, 0, 0)});
      cases.push_back({"corollary-B", R, P(m, 2, 0, 0, 0)});
    }
  for (int d : {3, 4, 5}) {
    cases.push_back({"theorem-C-I", 80.0, P(1, d, 0, 0, 0)});
    cases.push_back({"theorem-C-II", 80.0, P(1, d, 0, 0, 0)});
  }
  for (double beta : {0.75, 1.5})
    for (double R : {2.0, 10.0}) {
      cases.push_back({"weighted-poincare-d2", R, P(1, 2, beta, 0, 0)});
      cases.push_back({"ipp-lemma", R, P(1, 2, beta, 0, 0)});
    }
  for (double m : {2.0, 3.0})
    for (double alpha : {0.5, 1.5}) cases.push_back({"weighted-poincare-m", 10.0, P(m, 2, 0, 0, alpha)});
  for (int d : {2, 3, 5})
    for (double beta : {0.5, 2.0}) cases.push_back({"ipp-lemma-general", 10.0, P(1, d, beta, 0, 0)});
  for (double beta : {0.5, 1.5}) cases.push_back({"bilap-weights-d4", 10.0, P(1, 4, beta, 0, 0)});
  for (double gamma : {0.45, 0.6}) cases.push_back({"interp-weighted", 5.0, P(1, 2, 0.7, gamma, 0)});

  const int threads = int(std::max(1u, std::thread::hardware_concurrency()));
  int total = 0;
  std::vector<std::string> violated;
  for (const auto& c : cases) {
    const int d = (c.name == "theorem-C-I" || c.name == "theorem-C-II" || c.name == "ipp-lemma-general" ||
                   c.name == "bilap-weights-d4")
                      ? c.p.d
                      : 2;
    const auto rep = check_inequality(c.name, Geometry::from_R(c.R, d), c.p, 1000, 1, false, threads);
    total += rep.violations;
    if (rep.violations > 0)
      violated.push_back(fmt::format("{}(m={}, d={}, beta={}, alpha={}, R={}): {} violations, min ratio {:.3f}", c.name,
                                     c.p.m, d, c.p.beta, c.p.alpha, c.R, rep.violations, rep.min_ratio));
  }

  struct Tight {
    std::string name;
    double R;
    InequalityParams p;
  };
  const std::vector<Tight> tights = {{"corollary-A", 10.0, P(1, 2, 0, 0, 0)},  {"corollary-A", 10.0, P(2, 2, 0, 0, 0)},
                                     {"corollary-B", 10.0, P(1, 2, 0, 0, 0)},  {"theorem-C-I", 200.0, P(1, 5, 0, 0, 0)},
                                     {"theorem-C-II", 200.0, P(1, 3, 0, 0, 0)}, {"theorem-C-II", 200.0, P(1, 5, 0, 0, 0)}};
  double worst_tight = 0.0;
  for (const auto& t : tights) {
    const auto rep = tightness(t.name, Geometry::from_R(t.R, t.p.d), t.p);
    worst_tight = std::max(worst_tight, std::abs(rep.ratio - rep.expected) / rep.expected);
  }

  std::string detail = fmt::format("{} parameter points x 1000 trials, {} violations; tightness max rel gap {:.2e}",
                                   cases.size(), total, worst_tight);
  for (const auto& v : violated) detail += "\n      " + v;
  return {total == 0 && worst_tight <= 1e-2, detail};
}

}  // namespace

int main() {
  report(1, exact_dim4());
  report(2, sandwich());
  report(3, minimal_mode_d2());
  report(4, radial_switch_dim4());
  report(5, constants());
  report(6, theta_trend());
  report(7, oracle_agreement());
  report(8, sign_lemmas());
  report(9, biharmonic_forms());
  report(10, fuzzing());
  fmt::print("{} of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

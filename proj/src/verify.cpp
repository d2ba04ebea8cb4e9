#include "annulus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "annulus/biharmonic.hpp"
#include "annulus/eigensolve.hpp"
#include "annulus/oracle.hpp"
#include "annulus/quadrature.hpp"

namespace annulus {

using std::numbers::pi;

const std::vector<InequalityInfo>& inequality_registry() {
  static const std::vector<InequalityInfo> reg = {
      {"corollary-A", "int (L_m u)^2 >= (4m^2 + x) x int u^2/|x|^4, x = pi^2/R^2", true},
      {"corollary-B", "int (L_m u)^2 >= (4m^2 + x) x / (4(m^2+1) + 2x) int |grad u|^2/|x|^2", true},
      {"theorem-C-I", "int (Delta u)^2 >= (d^2/4 + x)((d-4)^2/4 + x) int u^2/|x|^4", true},
      {"theorem-C-II", "int (Delta u)^2 >= c_d(x) int |grad u|^2/|x|^2", true},
      {"weighted-poincare-d2",
       "int (a/|x|)^{4b} u^2/|x|^4 <= ((2b+1)^2-2)^{-2} int (Delta u)^2, "
       "int (a/|x|)^{2b} |grad u|^2/|x|^2 <= (b+1)^2 ((b+1)^2-2)^{-2} int (Delta u)^2",
       false},
      {"weighted-poincare-m",
       "int (a/|x|)^{2al} (u^2/|x|^4, |grad u|^2/|x|^2) <= ((1+al), (1+al)^2) / (4(m-1) al (al^2+(m+1)al+m^2)) "
       "int (a/|x|)^{2al} (L_m u)^2",
       false},
      {"ipp-lemma", "int u^2 |x|^{4b-4} <= (2b-1)^{-2} int (x.grad u/|x|^2)^2 |x|^{4b}", false},
      {"ipp-lemma-general", "int |x|^b u^2/|x|^d <= 4/b^2 int |x|^b (x.grad u)^2/|x|^d", false},
      {"bilap-weights-d4",
       "int w u^2/|x|^4 <= 4b^2/(2-b)^2 int w (Delta u)^2, int w |grad u|^2/|x|^2 <= 4b/(2-b) int w (Delta u)^2, "
       "w = (|x|/b)^b",
       false},
      {"interp-weighted",
       "int |grad u|^2/|x|^2 (w_out^{2g} + w_in^{2g}) <= C (int u^2/|x|^4 (w_out^{4b} + w_in^{4b}) + int |grad^2 u|^2)",
       false},
  };
  return reg;
}

const InequalityInfo& inequality_info(const std::string& name) {
  for (auto& info : inequality_registry())
    if (info.name == name) return info;
  throw std::invalid_argument("unknown inequality: " + name);
}

namespace {

enum class Kind { CorA, CorB, CI, CII, WPd2, WPm, Ipp, IppGen, BilapD4, Interp };

Kind kind_of(const std::string& name) {
  static const std::pair<const char*, Kind> table[] = {
      {"corollary-A", Kind::CorA},         {"corollary-B", Kind::CorB},
      {"theorem-C-I", Kind::CI},           {"theorem-C-II", Kind::CII},
      {"weighted-poincare-d2", Kind::WPd2}, {"weighted-poincare-m", Kind::WPm},
      {"ipp-lemma", Kind::Ipp},            {"ipp-lemma-general", Kind::IppGen},
      {"bilap-weights-d4", Kind::BilapD4}, {"interp-weighted", Kind::Interp},
  };
  for (auto& [n, k] : table)
    if (name == n) return k;
  throw std::invalid_argument("unknown inequality: " + name);
}

// dimension of the harmonic decomposition each inequality lives in
int dim_of(Kind k, const InequalityParams& p) {
  switch (k) {
    case Kind::CI:
    case Kind::CII:
    case Kind::IppGen:
      return p.d;
    case Kind::BilapD4:
      return 4;
    default:
      return 2;
  }
}

// power of r shared by every integrand, removed by the balance Y = exp(-p t / 2) Z
double power_of(Kind k, const InequalityParams& p) {
  switch (k) {
    case Kind::Ipp:
      return 4.0 * p.beta - 2.0;
    case Kind::IppGen:
      return p.beta;
    default:
      return dim_of(k, p) - 4.0;
  }
}

int mode_limit(Kind k, const InequalityParams& p) {
  switch (k) {
    case Kind::CorA:
    case Kind::CorB:
    case Kind::WPm:
      return std::max(8, int(std::ceil(2.0 * p.m)) + 4);
    case Kind::Ipp:
    case Kind::IppGen:
      return 0;
    default:
      return 8;
  }
}

struct Constants {
  double a = 0.0;
  double b = 0.0;
};

Constants constants_of(Kind k, const InequalityParams& p, double R) {
  const double x = pi * pi / (R * R), m = p.m, be = p.beta, al = p.alpha;
  const double d = p.d;
  switch (k) {
    case Kind::CorA:
      return {(4.0 * m * m + x) * x};
    case Kind::CorB:
      return {(4.0 * m * m + x) * x / (4.0 * (m * m + 1.0) + 2.0 * x)};
    case Kind::CI:
      return {(d * d / 4.0 + x) * ((d - 4.0) * (d - 4.0) / 4.0 + x)};
    case Kind::CII:
      if (p.d == 3) return {(25.0 + 104.0 * x + 16.0 * x * x) / (36.0 + 16.0 * x)};
      if (p.d == 4) return {(9.0 + 10.0 * x + x * x) / (3.0 + x)};
      return {(d * d * (d - 4.0) * (d - 4.0) + ((d - 2.0) * (d - 2.0) + 4.0) * 8.0 * x + 16.0 * x * x) /
              (4.0 * (d - 4.0) * (d - 4.0) + 16.0 * x)};
    case Kind::WPd2: {
      const double u = (2.0 * be + 1.0) * (2.0 * be + 1.0) - 2.0, v = (be + 1.0) * (be + 1.0) - 2.0;
      return {1.0 / (u * u), (be + 1.0) * (be + 1.0) / (v * v)};
    }
    case Kind::WPm: {
      const double den = 4.0 * (m - 1.0) * al * (al * al + (m + 1.0) * al + m * m);
      return {(1.0 + al) / den, (1.0 + al) * (1.0 + al) / den};
    }
    case Kind::Ipp:
      return {1.0 / ((2.0 * be - 1.0) * (2.0 * be - 1.0))};
    case Kind::IppGen:
      return {4.0 / (be * be)};
    case Kind::BilapD4:
      return {4.0 * be * be / ((2.0 - be) * (2.0 - be)), 4.0 * be / (2.0 - be)};
    case Kind::Interp:
      return {};
  }
  return {};
}

using Vec4 = Eigen::Array<double, 4, 1>;

// Integrands of one mode at t, from y = exp(-c t) (Y, Y', Y'').
Vec4 integrand(Kind kind, const InequalityParams& p, double ta, double tb, int n, double t, const Eigen::Array3d& y) {
  const int d = dim_of(kind, p);
  const double k = double(n) * (n + d - 2);
  const double m1 = p.m - 1.0;
  const double Qu = y(0) * y(0);
  const double Qgrad = y(1) * y(1) + k * y(0) * y(0);
  const double lap = y(2) + (d - 2) * y(1) - k * y(0);
  const double Lm = y(2) + 2.0 * m1 * y(1) + (m1 * m1 - double(n) * n) * y(0);
  auto outer = [&](double w) { return std::exp(w * (t - tb)); };
  auto inner = [&](double w) { return std::exp(-w * (t - ta)); };
  Vec4 v = Vec4::Zero();
  switch (kind) {
    case Kind::CorA:
      v << Lm * Lm, Qu, 0, 0;
      break;
    case Kind::CorB:
      v << Lm * Lm, Qgrad, 0, 0;
      break;
    case Kind::CI:
      v << lap * lap, Qu, 0, 0;
      break;
    case Kind::CII:
      v << lap * lap, Qgrad, 0, 0;
      break;
    case Kind::WPd2:
      v << lap * lap, inner(4.0 * p.beta) * Qu, inner(2.0 * p.beta) * Qgrad, 0;
      break;
    case Kind::WPm: {
      const double w = inner(2.0 * p.alpha);
      v << w * Lm * Lm, w * Qu, w * Qgrad, 0;
      break;
    }
    case Kind::Ipp:
    case Kind::IppGen:
      v << y(1) * y(1), Qu, 0, 0;
      break;
    case Kind::BilapD4: {
      const double w = outer(p.beta);
      v << w * lap * lap, w * Qu, w * Qgrad, 0;
      break;
    }
    case Kind::Interp: {
      const double n2 = double(n) * n;
      const double hess = (y(2) - y(1)) * (y(2) - y(1)) + 2.0 * n2 * (y(1) - y(0)) * (y(1) - y(0)) +
                          (y(1) - n2 * y(0)) * (y(1) - n2 * y(0));
      v << Qu * (outer(4.0 * p.beta) + inner(4.0 * p.beta)), hess,
          Qgrad * (outer(2.0 * p.gamma) + inner(2.0 * p.gamma)), 0;
      break;
    }
  }
  return v;
}

struct Outcome {
  double ratio = 0.0;
  double quotient = std::numeric_limits<double>::quiet_NaN();
  double effective = std::numeric_limits<double>::quiet_NaN();
};

Outcome combine(Kind kind, const Constants& c, const Vec4& v) {
  Outcome o;
  switch (kind) {
    case Kind::CorA:
    case Kind::CorB:
    case Kind::CI:
    case Kind::CII:
      o.quotient = v(0) / v(1);
      o.ratio = o.quotient / c.a;
      break;
    case Kind::Ipp:
    case Kind::IppGen:
      o.ratio = c.a * v(0) / v(1);
      break;
    case Kind::WPd2:
    case Kind::WPm:
    case Kind::BilapD4:
      o.ratio = std::min(c.a * v(0) / v(1), c.b * v(0) / v(2));
      break;
    case Kind::Interp:
      o.effective = v(2) / (v(0) + v(1));
      o.ratio = 1.0 / o.effective;
      break;
  }
  return o;
}

Eigen::Array3d balanced(const Eigen::Array3d& z, double c) {
  return {z(0), z(1) + c * z(0), z(2) + 2.0 * c * z(1) + c * c * z(0)};
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * std::uint64_t(trial + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Clamped cubic spline through (i h, z_i) with zero end slopes.
struct ClampedSpline {
  double h = 0.0;
  Eigen::VectorXd z, M;

  ClampedSpline(const Eigen::VectorXd& nodes, double step) : h(step), z(nodes) {
    const int n = int(z.size());
    Eigen::VectorXd diag(n), rhs(n);
    const double off = h / 6.0;
    for (int i = 0; i < n; ++i) {
      diag(i) = (i == 0 || i == n - 1) ? h / 3.0 : 2.0 * h / 3.0;
      if (i == 0)
        rhs(i) = (z(1) - z(0)) / h;
      else if (i == n - 1)
        rhs(i) = -(z(n - 1) - z(n - 2)) / h;
      else
        rhs(i) = (z(i + 1) - 2.0 * z(i) + z(i - 1)) / h;
    }
    for (int i = 1; i < n; ++i) {
      const double w = off / diag(i - 1);
      diag(i) -= w * off;
      rhs(i) -= w * rhs(i - 1);
    }
    M.resize(n);
    M(n - 1) = rhs(n - 1) / diag(n - 1);
    for (int i = n - 2; i >= 0; --i) M(i) = (rhs(i) - off * M(i + 1)) / diag(i);
  }

  Eigen::Array3d jet(int cell, double u) const {
    const double A = h - u, B = u;
    const double z0 = z(cell), z1 = z(cell + 1), m0 = M(cell), m1 = M(cell + 1);
    const double val = m0 * A * A * A / (6 * h) + m1 * B * B * B / (6 * h) + (z0 / h - m0 * h / 6) * A +
                       (z1 / h - m1 * h / 6) * B;
    const double d1 = -m0 * A * A / (2 * h) + m1 * B * B / (2 * h) - (z0 / h - m0 * h / 6) + (z1 / h - m1 * h / 6);
    const double d2 = m0 * A / h + m1 * B / h;
    return {val, d1, d2};
  }
};

}  // namespace

double corollary_B_threshold(double m) {
  double r = threshold_problem1(m);
  for (int n = 0; n <= int(std::ceil(2.0 * m)) + 10; ++n) {
    try {
      r = std::max(r, threshold_problem2_assumptionI(m, n));
    } catch (const std::domain_error&) {
    }
  }
  return r;
}

bool inequality_hypothesis(const std::string& name, const Geometry& g, const InequalityParams& p, std::string* why) {
  const double R = g.conformal_class();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  switch (kind_of(name)) {
    case Kind::CorA:
      if (!(p.m >= 1.0)) return fail("m >= 1");
      if (R < threshold_problem1(p.m)) return fail("R >= pi sqrt(2) / sqrt(2m - 1)");
      break;
    case Kind::CorB:
      if (!(p.m >= 1.0)) return fail("m >= 1");
      if (R < corollary_B_threshold(p.m)) return fail("R >= R*_{1,m}");
      break;
    case Kind::CI:
    case Kind::CII:
      if (p.d < 3) return fail("d >= 3");
      if (R < threshold_dimd_problem1()) return fail("R >= R_d");
      break;
    case Kind::WPd2:
      if (!(p.beta > 0.5)) return fail("beta > 1/2");
      break;
    case Kind::WPm:
      if (!(p.m > 1.0)) return fail("m > 1");
      if (!(p.alpha > 0.0 && p.alpha < std::min(4.0 * p.m / 3.0, 2.0))) return fail("0 < alpha < min(4m/3, 2)");
      break;
    case Kind::Ipp:
      if (!(p.beta > 0.5)) return fail("beta > 1/2");
      break;
    case Kind::IppGen:
      if (p.d < 2) return fail("d >= 2");
      if (!(p.beta > 0.0)) return fail("beta > 0");
      break;
    case Kind::BilapD4:
      if (!(p.beta > 0.0 && p.beta < 2.0)) return fail("0 < beta < 2");
      break;
    case Kind::Interp:
      if (!(p.beta > 0.5 && p.beta < 1.0)) return fail("1/2 < beta < 1");
      if (!(p.gamma > std::sqrt(2.0) - 1.0 && p.gamma < 1.0)) return fail("sqrt(2) - 1 < gamma < 1");
      if (R < conformal_class_hypothesis(p.beta)) return fail("R above the five-term conformal class bound");
      break;
  }
  return true;
}

Eigen::Array3d TestFunction::jet(double t) const {
  const double L = t1 - t0;
  if (t < t0 || t > t1) return Eigen::Array3d::Zero();
  const double s = (t - t0) / L, u = 2.0 * s - 1.0;
  double P = 0.0, Pu = 0.0, Puu = 0.0;
  for (int j = int(poly.size()) - 1; j >= 0; --j) {
    Puu = Puu * u + 2.0 * Pu;
    Pu = Pu * u + P;
    P = P * u + poly(j);
  }
  const double Ps = 2.0 * Pu, Pss = 4.0 * Puu;
  Eigen::Array3d z;
  if (clamped) {
    const double B = s * s * (1 - s) * (1 - s);
    const double B1 = 2.0 * s * (1 - s) * (1 - 2 * s);
    const double B2 = 2.0 * ((1 - 2 * s) * (1 - 2 * s) - 2.0 * s * (1 - s));
    z << B * P, (B1 * P + B * Ps) / L, (B2 * P + 2.0 * B1 * Ps + B * Pss) / (L * L);
  } else {
    z << P, Ps / L, Pss / (L * L);
  }
  for (int i = 0; i < exp_rates.size(); ++i) {
    const double k = exp_rates(i);
    const double e = exp_coeffs(i) * std::exp(k * (t - (k > 0 ? t1 : t0)));
    z += Eigen::Array3d(e, k * e, k * k * e);
  }
  return z;
}

TestFunction random_test_function(std::uint64_t seed, const Geometry& g, int n_max, bool clamped, double balance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N(0.0, 1.0);
  TestFunction f;
  f.seed = seed;
  f.clamped = clamped;
  f.mode = std::uniform_int_distribution<int>(0, std::max(0, n_max))(rng);
  const double ta = std::log(g.a), tb = std::log(g.b), R = tb - ta;
  f.t0 = ta;
  f.t1 = tb;
  if (clamped && U(rng) < 0.5) {
    const double L = R * std::exp(std::log(0.05) * U(rng));
    f.t0 = ta + (R - L) * U(rng);
    f.t1 = f.t0 + L;
  }
  const int deg = std::uniform_int_distribution<int>(0, 8)(rng);
  f.poly.resize(deg + 1);
  for (int j = 0; j <= deg; ++j) f.poly(j) = N(rng) / (j + 1);
  if (!clamped) {
    const double n = f.mode;
    f.exp_rates = Eigen::Vector4d(n, -n, 2.0 + n, 2.0 - n).array() + balance;
    f.exp_coeffs.resize(4);
    for (int i = 0; i < 4; ++i) f.exp_coeffs(i) = N(rng);
  }
  return f;
}

VerifyReport check_inequality(const std::string& name, const Geometry& g, const InequalityParams& p, int trials,
                              std::uint64_t seed, bool force, int threads) {
  const Kind kind = kind_of(name);
  VerifyReport rep;
  rep.name = name;
  rep.params = p;
  rep.R = g.conformal_class();
  rep.trials = trials;
  rep.seed = seed;
  std::string why;
  rep.hypothesis = inequality_hypothesis(name, g, p, &why);
  if (!rep.hypothesis && !force) throw HypothesisError(name + " outside its hypothesis region: needs " + why);
  rep.forced = !rep.hypothesis;

  const double ta = std::log(g.a), tb = std::log(g.b);
  const double c = -power_of(kind, p) / 2.0;
  const Constants K = constants_of(kind, p, rep.R);
  rep.constant = K.a;
  const bool clamped = kind != Kind::Interp;
  const int n_max = mode_limit(kind, p);

  std::vector<Outcome> out(std::max(trials, 0));
  std::vector<int> modes(out.size());
  auto run = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const TestFunction f = random_test_function(trial_seed(seed, i), g, n_max, clamped, -c);
      const auto v = integrate_gk<4>(
          [&](double t) { return integrand(kind, p, ta, tb, f.mode, t, balanced(f.jet(t), c)); }, f.t0, f.t1,
          1e-10);
      out[i] = combine(kind, K, v);
      modes[i] = f.mode;
    }
  };
  const int nt = std::clamp(threads, 1, std::max(1, trials));
  if (nt == 1) {
    run(0, trials);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w) pool.emplace_back(run, trials * w / nt, trials * (w + 1) / nt);
    for (auto& th : pool) th.join();
  }

  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.min_quotient = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const auto& o = out[i];
    const bool bad = kind == Kind::Interp ? !(std::isfinite(o.effective) && o.effective >= 0.0)
                                          : !(o.ratio >= 1.0 - 1e-9);
    if (bad) ++rep.violations;
    if (o.ratio < rep.min_ratio || std::isnan(o.ratio)) {
      rep.min_ratio = o.ratio;
      rep.worst_trial = i;
      rep.worst_mode = modes[i];
    }
    if (!std::isnan(o.quotient)) rep.min_quotient = std::min(rep.min_quotient, o.quotient);
    if (!std::isnan(o.effective)) rep.max_effective_constant = std::max(rep.max_effective_constant, o.effective);
  }
  if (!inequality_info(name).eigen_type) rep.min_quotient = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

TightnessReport tightness(const std::string& name, const Geometry& g, const InequalityParams& p, int N) {
  const Kind kind = kind_of(name);
  if (!inequality_info(name).eigen_type) throw std::invalid_argument(name + " has no eigenvalue to compare with");
  const double R = g.conformal_class();
  const int mi = int(std::lround(p.m));
  if ((kind == Kind::CorA || kind == Kind::CorB) && (std::abs(p.m - mi) > 0 || g.d != 2))
    throw std::invalid_argument("tightness in the plane needs integer m and d = 2");
  if ((kind == Kind::CI || kind == Kind::CII) && g.d != p.d)
    throw std::invalid_argument("geometry dimension differs from the inequality parameter");

  EigenResult res;
  Problem problem = Problem::WeightedL2;
  switch (kind) {
    case Kind::CorA:
      res = lambda_min_d2(mi, g);
      break;
    case Kind::CorB:
      res = mu_min_d2(mi, g).best;
      problem = Problem::WeightedGradient;
      break;
    case Kind::CI:
      res = lambda_min_dimd(g);
      break;
    default:
      res = mu_min_dimd(g);
      problem = Problem::WeightedGradient;
      break;
  }
  const auto sol = oracle_solve(problem, p.m, res.mode, g, N);
  Eigen::VectorXd nodes = Eigen::VectorXd::Zero(sol.N + 1);
  nodes.segment(1, sol.N - 1) = sol.z;
  const ClampedSpline spline(nodes, sol.h);

  static constexpr double gx[5] = {-0.906179845938663992797627, -0.538469310105683091036314, 0.0,
                                   0.538469310105683091036314, 0.906179845938663992797627};
  static constexpr double gw[5] = {0.236926885056189087514264, 0.478628670499366468041292,
                                   0.568888888888888888888889, 0.478628670499366468041292,
                                   0.236926885056189087514264};
  const double c = -power_of(kind, p) / 2.0;
  Vec4 v = Vec4::Zero();
  for (int cell = 0; cell < sol.N; ++cell)
    for (int q = 0; q < 5; ++q) {
      const double u = 0.5 * sol.h * (gx[q] + 1.0);
      const double t = cell * sol.h + u;
      v += 0.5 * sol.h * gw[q] * integrand(kind, p, 0.0, R, res.mode, t, balanced(spline.jet(cell, u), c));
    }
  const Constants K = constants_of(kind, p, R);
  TightnessReport rep;
  rep.name = name;
  rep.mode = res.mode;
  rep.eigenvalue = res.value;
  rep.constant = K.a;
  rep.ratio = combine(kind, K, v).ratio;
  rep.expected = res.value / K.a;
  rep.rel_gap = std::abs(rep.ratio - rep.expected) / rep.expected;
  return rep;
}

}  // namespace annulus

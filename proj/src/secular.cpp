#include "annulus/secular.hpp"

#include <algorithm>

#include "annulus/rootfind.hpp"

namespace annulus {

using std::numbers::pi;
using cplx = std::complex<double>;

double psi_problem1(double theta, double m, int n, double R) {
  return psi(theta, m * m + double(n) * n, R);
}

double psi_problem1_naive(double theta, double m, int n, double R) {
  const double c2 = m * m + double(n) * n;
  const double a2 = 2.0 * c2 * R * R;
  const double s = std::sqrt(a2 + theta * theta);
  const double b2 = 1.0 / (R * R);
  return b2 * ((1.0 + std::exp(2.0 * s)) * std::cos(theta) - 2.0 * std::exp(s)) * theta * s -
         c2 * (std::exp(2.0 * s) - 1.0) * std::sin(theta);
}

namespace {

// First sign change of psi on (0, hi], skipping the trivial zero at the origin.
std::optional<std::pair<double, double>> scan_psi(double p, double R, double hi, int steps) {
  auto f = [&](double t) { return psi(t, p, R); };
  const double lo = hi / steps * 1e-3;
  auto br = sign_changes(f, lo, hi, steps, 1);
  if (br.empty()) return std::nullopt;
  return br.front();
}

}  // namespace

ZeroResult first_zero_psi(double p, double R, bool force) {
  if (!(R > 0.0) || !(p > 0.0)) throw std::invalid_argument("first_zero_psi needs R > 0 and p > 0");
  auto f = [&](double t) { return psi(t, p, R); };
  const bool valid = R >= bracket_validity(p);
  if (valid && f(pi) < 0.0 && f(2.0 * pi) > 0.0) return {bisect(f, pi, 2.0 * pi), true};
  if (!force) throw BracketError("conformal class below proven bracket validity");
  for (double hi = 2.0 * pi; hi <= 64.0 * pi; hi *= 2.0) {
    if (auto br = scan_psi(p, R, hi, int(512 * hi / pi))) return {bisect(f, br->first, br->second), false};
  }
  throw BracketError("no sign change of the secular function found");
}

ZeroResult first_zero_problem1(double m, int n, double R, bool force) {
  return first_zero_psi(m * m + double(n) * n, R, force);
}

std::vector<double> zeros_psi(double p, double R, int k_max) {
  auto f = [&](double t) { return psi(t, p, R); };
  const double hi = 2.0 * pi * k_max;
  const int steps = 256 * 2 * k_max;
  std::vector<double> out;
  for (auto [lo, up] : sign_changes(f, hi / steps * 1e-3, hi, steps)) out.push_back(bisect(f, lo, up));
  return out;
}

std::vector<double> zeros_problem1(double m, int n, double R, int k_max, bool force) {
  const double p = m * m + double(n) * n;
  if (!force && R < bracket_validity(p)) throw BracketError("conformal class below proven bracket validity");
  return zeros_psi(p, R, k_max);
}

double eigenvalue_from_theta(const Biquadratic& b, double theta, double R) {
  const double x = (theta / R) * (theta / R);
  return b.c * b.c + (2.0 * b.p0 + x) * x;
}

double det_case1(double x, double l1, double l2) {
  const double sp = (l1 + l2) * (l1 + l2), sm = (l1 - l2) * (l1 - l2);
  return sp * (std::pow(x, 2 * l1) + std::pow(x, 2 * l2)) - sm * (std::pow(x, 2 * l1 + 2 * l2) + 1.0) -
         8.0 * l1 * l2 * std::pow(x, l1 + l2);
}

double det_case2(double x, double alpha) {
  const double y = std::pow(1.0 + x, alpha);
  return 2.0 * (y - 1.0) - alpha * (y + 1.0) * std::log1p(x);
}

double secular_d4_n0(double theta) {
  return 2.0 * (1.0 - std::cos(theta)) - theta * std::sin(theta);
}

double mu_from_theta(const Biquadratic& b, double theta, double R) {
  const double x = (theta / R) * (theta / R);
  return (x * x + 2.0 * b.p0 * x + b.c * b.c) / (x + b.g);
}

Problem2Point secular_problem2(const Biquadratic& b, double theta, double R) {
  Problem2Point pt;
  const double x = (theta / R) * (theta / R);
  pt.mu = mu_from_theta(b, theta, R);
  pt.p = b.p0 - pt.mu / 2.0;
  pt.in_regime = 2.0 * pt.p + x > 0.0 && theta > 0.0;
  pt.value = pt.in_regime ? psi(theta, pt.p, R) : std::nan("");
  return pt;
}

Problem2Point secular_problem2(double theta, double m, int n, double R) {
  return secular_problem2(biquadratic_problem2_d2(m, n), theta, R);
}

Problem2Point secular_problem2_gen(double theta, int d, int n, double R) {
  return secular_problem2(biquadratic_gen(d, n), theta, R);
}

namespace {

// cosh(z R) and sinh(z R) / z with z^2 = w, both times exp(-Re(z) R)
struct CS {
  cplx c, s;
  double decay;
};

CS scaled_cs(cplx w, double R) {
  const cplx z = std::sqrt(w);
  const double x = std::abs(z.real());
  const cplx zr = z * R;
  if (std::abs(zr) < 1e-3) {
    const cplx u = zr * zr;
    const double e = std::exp(-x * R);
    return {e * (1.0 + u / 2.0 + u * u / 24.0), e * R * (1.0 + u / 6.0 + u * u / 120.0), x};
  }
  const cplx ep = std::exp(zr - x * R), em = std::exp(-zr - x * R);
  return {(ep + em) / 2.0, (ep - em) / (2.0 * z), x};
}

}  // namespace

namespace {

// Limit of the clamped determinant over (w1 - w2)^2 when w1 = w2 = w, times exp(-2 Re(sqrt w) R).
double double_root_secular(double w, double R) {
  const cplx z = std::sqrt(cplx(w));
  cplx C, S, dC, dS, ddC, ddS;
  const double u = w * R * R;
  if (std::abs(u) < 4.0) {
    // series in u = w R^2
    double f2 = 1.0, f3 = 1.0;  // (2j)!, (2j+1)!
    C = S = dC = dS = ddC = ddS = 0.0;
    for (int j = 0; j < 40; ++j) {
      if (j > 0) {
        f2 *= (2.0 * j - 1.0) * (2.0 * j);
        f3 *= (2.0 * j) * (2.0 * j + 1.0);
      }
      const cplx t = std::pow(u, j);
      C += t / f2;
      S += R * t / f3;
      if (j >= 1) {
        const cplx t1 = std::pow(u, j - 1);
        dC += double(j) * R * R * t1 / f2;
        dS += double(j) * R * R * R * t1 / f3;
      }
      if (j >= 2) {
        const cplx t2 = std::pow(u, j - 2);
        ddC += double(j) * (j - 1) * std::pow(R, 4) * t2 / f2;
        ddS += double(j) * (j - 1) * std::pow(R, 5) * t2 / f3;
      }
    }
  } else {
    const double x = std::abs(z.real());
    const cplx ep = std::exp(z * R - x * R), em = std::exp(-z * R - x * R);
    C = (ep + em) / 2.0;
    S = (ep - em) / (2.0 * z);
    dC = R * S / 2.0;
    dS = (R * C - S) / (2.0 * w);
    ddC = R * dS / 2.0;
    ddS = (R * R * S / 2.0 - 3.0 * dS) / (2.0 * w);
  }
  const cplx h = (C * ddC - dC * dC) - w * (S * ddS - dS * dS);
  const double scale = std::abs(u) < 4.0 ? std::exp(-2.0 * std::abs(z.real()) * R) : 1.0;
  return scale * (h / 2.0).real();
}

}  // namespace

double clamped_secular(double p, double q, double R) {
  const double disc = p * p - q;
  if (std::abs(disc) * std::pow(R, 4) < 1e-8) return double_root_secular(p, R);
  cplx w1, w2;
  if (disc < 0.0) {
    w1 = cplx(p, std::sqrt(-disc));
    w2 = std::conj(w1);
  } else {
    w1 = p + std::copysign(std::sqrt(disc), p);
    w2 = w1 == 0.0 ? cplx(0.0) : q / w1;
  }
  const CS a = scaled_cs(w1, R), b = scaled_cs(w2, R);
  const cplx G = 2.0 * (a.c * b.c - std::exp(-(a.decay + b.decay) * R)) - 2.0 * p * a.s * b.s;
  const double g = G.real();
  return disc < 0.0 ? -g : g;
}

double p2_n0_equality(double mu, double m, double R, N0Branch branch) {
  const auto r = roots_problem2_d2(m, 0, mu);
  if (r.regime != Regime::ComplexQuartet) throw std::domain_error("n = 0 equalities need 0 < mu < 4(m^2 - 1)");
  const double al = r.lambda1, be = r.lambda2;
  const double e = std::exp(-al * R);
  const double sign = branch == N0Branch::First ? 1.0 : -1.0;
  return 2.0 * al * e * std::sin(be * R) - sign * be * (1.0 - e * e);
}

double p2_n0_equality_printed(double mu, double m, double R, N0Branch branch) {
  const auto r = roots_problem2_d2(m, 0, mu);
  if (r.regime != Regime::ComplexQuartet) throw std::domain_error("n = 0 equalities need 0 < mu < 4(m^2 - 1)");
  const double al = r.lambda1, be = r.lambda2;
  const double e = std::exp(-al * R);
  const double sign = branch == N0Branch::First ? 1.0 : -1.0;
  return 2.0 * e * std::sin(be * R) - sign * (1.0 - e * e);
}

N0Repeated p2_n0_repeated(double m, const Geometry& g) {
  if (!(m > 1.0)) throw std::invalid_argument("n = 0 sub-cases need m > 1");
  const double R = g.conformal_class();
  const double w = 2.0 - m * m;
  N0Repeated out;
  if (std::abs(w) <= 1e-14) {
    out.subcase = N0Subcase::Critical;
    out.determinant = -(g.a * g.b) * (g.a * g.b) * std::pow(R, 4);
  } else {
    out.subcase = w > 0.0 ? N0Subcase::Below : N0Subcase::Above;
    out.determinant = double_root_secular(w, R);
  }
  out.solution_free = out.determinant != 0.0;
  return out;
}

double alternative_bound_I(double m, double R) {
  const double X = pi * pi / (R * R);
  const double e = m * m - 1.0;
  if (R < 2.0 * pi / e) throw std::domain_error("alternative bound I needs R >= 2 pi / (m^2 - 1)");
  return (8.0 * m * m + 8.0 * X) * X / (e + 2.0 * X + std::sqrt(e * e - 4.0 * X));
}

double alternative_bound_II(double m, double R) {
  const double X = pi * pi / (R * R);
  const double e = m * m - 1.0;
  if (R < pi / e) throw std::domain_error("alternative bound II needs R >= pi / (m^2 - 1)");
  return (4.0 * m * m - 3.0 + 2.0 * (2.0 * m * m + 1.0) * X + X * X) /
         (2.0 * m * m - 1.0 + X + 2.0 * std::sqrt(e * e - X));
}

}  // namespace annulus

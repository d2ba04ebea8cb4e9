#include "annulus/biharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "annulus/quadrature.hpp"

namespace annulus {

using std::numbers::pi;
using cplx = std::complex<double>;

int BiharmonicFun::truncation() const {
  int n = 0;
  for (auto& [k, v] : a) n = std::max(n, std::abs(k));
  for (auto& [k, v] : b) n = std::max(n, std::abs(k));
  return n;
}

BiharmonicFun::Jet BiharmonicFun::jet(const Eigen::Vector2d& x) const {
  const cplx z(x(0), x(1));
  const double r2 = x.squaredNorm(), lr = 0.5 * std::log(r2);
  cplx f = 0.0, f1 = 0.0, f2 = 0.0, g = 0.0, g1 = 0.0, g2 = 0.0;
  auto accumulate = [&](const std::map<int, cplx>& coeffs, cplx& v, cplx& v1, cplx& v2) {
    for (auto& [n, c] : coeffs) {
      const cplx zn2 = n - 2 >= 0 ? std::pow(z, n - 2) : 1.0 / std::pow(z, 2 - n);
      v += c * zn2 * z * z;
      v1 += double(n) * c * zn2 * z;
      v2 += double(n) * (n - 1) * c * zn2;
    }
  };
  accumulate(a, f, f1, f2);
  accumulate(b, g, g1, g2);

  auto holo_hess = [](cplx w) {
    Eigen::Matrix2d H;
    H << w.real(), -w.imag(), -w.imag(), -w.real();
    return H;
  };
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d glog = x / r2;
  const Eigen::Matrix2d hlog = I / r2 - 2.0 * x * x.transpose() / (r2 * r2);

  // harmonic part h = beta log r + Re g, multiplied by r^2
  const double h = beta * lr + g.real();
  const Eigen::Vector2d gh = beta * glog + Eigen::Vector2d(g1.real(), -g1.imag());
  const Eigen::Matrix2d Hh = beta * hlog + holo_hess(g2);

  Jet j;
  j.value = alpha * lr + f.real() + r2 * h;
  j.grad = alpha * glog + Eigen::Vector2d(f1.real(), -f1.imag()) + 2.0 * x * h + r2 * gh;
  j.hess = alpha * hlog + holo_hess(f2) + 2.0 * h * I + 2.0 * (x * gh.transpose() + gh * x.transpose()) + r2 * Hh;
  return j;
}

BiharmonicFun BiharmonicFun::parse(const std::string& text) {
  BiharmonicFun psi;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&] { throw std::invalid_argument("bad coefficient line " + std::to_string(lineno)); };
    if (key == "alpha" || key == "beta") {
      double v;
      if (!(ls >> v)) fail();
      (key == "alpha" ? psi.alpha : psi.beta) = v;
    } else if (key == "a" || key == "b") {
      int n;
      double re, im;
      if (!(ls >> n >> re >> im)) fail();
      (key == "a" ? psi.a : psi.b)[n] += cplx(re, im);
    } else {
      fail();
    }
  }
  return psi;
}

Eigen::Array<double, 6, 1> NormRecord::as_array() const {
  Eigen::Array<double, 6, 1> v;
  v << grad_weighted, psi_weighted, laplacian_sq, dz2_sq, hessian_sq, dzzbar_sq;
  return v;
}

namespace {

// sum of c r^p log^j r keyed by (p, j)
using Series = std::map<std::pair<int, int>, cplx>;

Series deriv(const Series& s) {
  Series out;
  for (auto& [key, c] : s) {
    auto [p, j] = key;
    if (p != 0) out[{p - 1, j}] += double(p) * c;
    if (j != 0) out[{p - 1, j - 1}] += double(j) * c;
  }
  return out;
}

Series shift(const Series& s, int q) {
  Series out;
  for (auto& [key, c] : s) out[{key.first + q, key.second}] += c;
  return out;
}

Series combine(const Series& x, cplx cx, const Series& y, cplx cy) {
  Series out;
  for (auto& [key, c] : x) out[key] += cx * c;
  for (auto& [key, c] : y) out[key] += cy * c;
  return out;
}

// int_{ta}^{tb} exp(s t) t^j dt
double exp_poly_integral(double s, int j, double ta, double tb) {
  const double T = std::max(std::abs(ta), std::abs(tb));
  if (std::abs(s) * T < 2.0) {
    double sum = 0.0, term = 1.0;
    for (int n = 0; n < 80; ++n) {
      if (n > 0) term *= s / n;
      const int e = j + n + 1;
      const double add = term * (std::pow(tb, e) - std::pow(ta, e)) / e;
      sum += add;
      if (n > 4 && std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  auto F = [&](double t) {
    double acc = 0.0, fact = 1.0;
    for (int i = 0; i <= j; ++i) {
      if (i > 0) fact *= (j - i + 1);
      acc += (i % 2 ? -1.0 : 1.0) * fact * std::pow(t, j - i) / std::pow(s, i + 1);
    }
    return std::exp(s * t) * acc;
  };
  return F(tb) - F(ta);
}

// int_a^b |f|^2 r^e dr; weighted exponents must stay off the integer poles
double sq_integral(const Series& f, double e, double ta, double tb, bool weighted = false) {
  double total = 0.0;
  for (auto& [k1, c1] : f)
    for (auto& [k2, c2] : f) {
      const double re = (c1 * std::conj(c2)).real();
      if (re == 0.0) continue;
      const double sx = k1.first + k2.first + e + 1.0;
      if (weighted && std::abs(sx) < 1e-9) throw ResonanceError("weight exponent hits a resonant power");
      total += re * exp_poly_integral(sx, k1.second + k2.second, ta, tb);
    }
  return total;
}

Series frequency_series(const BiharmonicFun& psi, int k) {
  Series c;
  auto get = [](const std::map<int, cplx>& m, int n) {
    auto it = m.find(n);
    return it == m.end() ? cplx(0.0) : it->second;
  };
  if (k == 0) {
    c[{0, 1}] += psi.alpha;
    c[{0, 0}] += get(psi.a, 0).real();
    c[{2, 1}] += psi.beta;
    c[{2, 0}] += get(psi.b, 0).real();
  } else {
    c[{k, 0}] += get(psi.a, k);
    c[{-k, 0}] += std::conj(get(psi.a, -k));
    c[{k + 2, 0}] += get(psi.b, k);
    c[{2 - k, 0}] += std::conj(get(psi.b, -k));
  }
  for (auto it = c.begin(); it != c.end();) it = it->second == 0.0 ? c.erase(it) : std::next(it);
  return c;
}

}  // namespace

NormRecord weighted_norms(const BiharmonicFun& psi, const Geometry& g, double gamma, Side side) {
  const double ta = std::log(g.a), tb = std::log(g.b);
  const double sgn = side == Side::Outer ? 1.0 : -1.0;
  // (|x|/b)^w = b^{-w} r^w and (a/|x|)^w = a^w r^{-w}
  const double c2 = side == Side::Outer ? std::pow(g.b, -2.0 * gamma) : std::pow(g.a, 2.0 * gamma);
  const double c4 = side == Side::Outer ? std::pow(g.b, -4.0 * gamma) : std::pow(g.a, 4.0 * gamma);
  NormRecord out;
  const int nmax = psi.truncation();
  for (int k = 0; k <= nmax; ++k) {
    const Series c = frequency_series(psi, k);
    const double fac = k == 0 ? 2.0 * pi : pi;
    const double k2 = double(k) * k;
    if (c.empty()) {
      out.psi_blocks.push_back(0.0);
      continue;
    }
    const Series d1 = deriv(c), d2 = deriv(d1);
    const Series lap = combine(combine(d2, 1.0, shift(d1, -1), 1.0), 1.0, shift(c, -2), -k2);
    const Series mixed = deriv(shift(c, -1));
    const Series polar = combine(shift(d1, -1), 1.0, shift(c, -2), -k2);

    const double block = fac * c4 * sq_integral(c, -3.0 + sgn * 4.0 * gamma, ta, tb, true);
    out.psi_blocks.push_back(block);
    out.psi_weighted += block;
    out.grad_weighted += fac * c2 *
                         (sq_integral(d1, -1.0 + sgn * 2.0 * gamma, ta, tb, true) +
                          k2 * sq_integral(c, -3.0 + sgn * 2.0 * gamma, ta, tb, true));
    out.laplacian_sq += fac * sq_integral(lap, 1.0, ta, tb);
    out.hessian_sq += fac * (sq_integral(d2, 1.0, ta, tb) + 2.0 * k2 * sq_integral(mixed, 1.0, ta, tb) +
                             sq_integral(polar, 1.0, ta, tb));
  }
  out.dzzbar_sq = out.laplacian_sq / 4.0;
  out.dz2_sq = out.hessian_sq / 2.0 - out.laplacian_sq / 4.0;
  return out;
}

NormRecord weighted_norms_quadrature(const BiharmonicFun& psi, const Geometry& g, double gamma, Side side,
                                     double rel_tol, int theta_points) {
  const double ta = std::log(g.a), tb = std::log(g.b);
  auto integrand = [&](double t) {
    Eigen::Array<double, 6, 1> acc = Eigen::Array<double, 6, 1>::Zero();
    const double r = std::exp(t);
    const double w = side == Side::Outer ? r / g.b : g.a / r;
    const double w2 = std::pow(w, 2.0 * gamma), w4 = w2 * w2;
    for (int i = 0; i < theta_points; ++i) {
      const double th = 2.0 * pi * i / theta_points;
      const Eigen::Vector2d x(r * std::cos(th), r * std::sin(th));
      const auto J = psi.jet(x);
      const double lap = J.hess.trace();
      const cplx dzz = cplx(J.hess(0, 0) - J.hess(1, 1), -2.0 * J.hess(0, 1)) / 4.0;
      Eigen::Array<double, 6, 1> v;
      v << J.grad.squaredNorm() / (r * r) * w2, J.value * J.value / std::pow(r, 4) * w4, lap * lap,
          4.0 * std::norm(dzz), J.hess.squaredNorm(), 4.0 * (lap / 4.0) * (lap / 4.0);
      acc += v;
    }
    return (acc * (2.0 * pi / theta_points) * r * r).eval();
  };
  const Eigen::Array<double, 6, 1> v = integrate_gk<6>(integrand, ta, tb, rel_tol);
  NormRecord out;
  out.grad_weighted = v(0);
  out.psi_weighted = v(1);
  out.laplacian_sq = v(2);
  out.dz2_sq = v(3);
  out.hessian_sq = v(4);
  out.dzzbar_sq = v(5);
  return out;
}

double conformal_class_hypothesis(double beta) {
  const double terms[] = {
      2.0,
      std::log(4.0 * beta) / (2.0 * beta - 1.0),
      std::log(2.0 / (2.0 - std::sqrt(3.0))) / (4.0 * beta),
      std::log(1.0 + 8.0 * beta * (1.0 - beta) / ((2.0 * beta - 1.0) * (2.0 * beta - 1.0))) / (4.0 * (1.0 - beta)),
      std::log(8.0 * beta * (beta + 1.0)) / (4.0 * beta),
  };
  return *std::max_element(std::begin(terms), std::end(terms));
}

InterpolationReport check_interpolation(const BiharmonicFun& psi, const Geometry& g, double beta, double gamma) {
  if (!(beta > 0.5 && beta < 1.0)) throw std::invalid_argument("interpolation needs 1/2 < beta < 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("interpolation needs 0 < gamma < 1");
  InterpolationReport rep;
  rep.hypothesis = g.conformal_class() >= conformal_class_hypothesis(beta);
  const auto go = weighted_norms(psi, g, gamma, Side::Outer), gi = weighted_norms(psi, g, gamma, Side::Inner);
  const auto po = weighted_norms(psi, g, beta, Side::Outer), pi_ = weighted_norms(psi, g, beta, Side::Inner);
  rep.lhs = go.grad_weighted + gi.grad_weighted;
  const double den = 1.0 - 2.0 * std::pow(g.a / g.b, 4.0 * beta);
  rep.rhs = (po.psi_weighted + pi_.psi_weighted + po.hessian_sq) / (gamma * (1.0 - gamma) * den);
  rep.ratio = rep.lhs / rep.rhs;
  rep.gamma_effective = rep.ratio;
  return rep;
}

}  // namespace annulus

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "annulus/geometry.hpp"

namespace annulus {

// Quadratic forms after Z = exp(-shift t) Y on [0, R]:
//   numerator   int (Z'' + c1 Z' + c0 Z)^2
//   denominator int Z^2                       (problem I)
//               int (Z' - s Z)^2 + k Z^2      (problem II)
struct TransformedForm {
  double c1 = 0.0;
  double c0 = 0.0;
  bool l2_denominator = true;
  double s = 0.0;
  double k = 0.0;
};

TransformedForm transformed_forms(Problem problem, double m, int n);
TransformedForm transformed_forms_dimd(Problem problem, int d, int n);

// Symmetric band matrix, lower storage: band(r, j) = M(j + r, j).
template <typename Scalar>
struct SymBand {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> band;

  SymBand() = default;
  SymBand(int n, int bw) : band(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(bw + 1, n)) {}

  int size() const { return int(band.cols()); }
  int bandwidth() const { return int(band.rows()) - 1; }

  void add(int i, int j, const Scalar& v) {
    if (i < j) std::swap(i, j);
    band(i - j, j) += v;
  }

  template <typename Derived>
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> operator*(const Eigen::MatrixBase<Derived>& x) const {
    const int n = size(), bw = bandwidth();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
    for (int j = 0; j < n; ++j) {
      y(j) += band(0, j) * x(j);
      for (int r = 1; r <= bw && j + r < n; ++r) {
        y(j + r) += band(r, j) * x(j);
        y(j) += band(r, j) * x(j + r);
      }
    }
    return y;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const int n = size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (int j = 0; j < n; ++j)
      for (int r = 0; r <= bandwidth() && j + r < n; ++r) M(j + r, j) = M(j, j + r) = band(r, j);
    return M;
  }
};

// Banded LDL^T without pivoting; the count of negative pivots is the inertia.
template <typename Scalar>
struct BandLDLT {
  SymBand<Scalar> L;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> D;
  int negatives = 0;
  bool ok = true;

  explicit BandLDLT(const SymBand<Scalar>& A) : L(A.size(), A.bandwidth()), D(A.size()) {
    const int n = A.size(), bw = A.bandwidth();
    for (int j = 0; j < n; ++j) {
      Scalar dj = A.band(0, j);
      for (int k = std::max(0, j - bw); k < j; ++k) dj -= L.band(j - k, k) * L.band(j - k, k) * D(k);
      if (dj == Scalar(0) || !std::isfinite(double(dj))) {
        ok = false;
        return;
      }
      D(j) = dj;
      if (dj < Scalar(0)) ++negatives;
      L.band(0, j) = Scalar(1);
      for (int i = j + 1; i <= std::min(n - 1, j + bw); ++i) {
        Scalar v = A.band(i - j, j);
        for (int k = std::max(0, i - bw); k < j; ++k) v -= L.band(i - k, k) * L.band(j - k, k) * D(k);
        L.band(i - j, j) = v / dj;
      }
    }
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve(Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x) const {
    const int n = L.size(), bw = L.bandwidth();
    for (int i = 0; i < n; ++i)
      for (int k = std::max(0, i - bw); k < i; ++k) x(i) -= L.band(i - k, k) * x(k);
    x.array() /= D.array();
    for (int i = n - 1; i >= 0; --i)
      for (int r = 1; r <= bw && i + r < n; ++r) x(i) -= L.band(r, i) * x(i + r);
    return x;
  }
};

template <typename Scalar>
SymBand<Scalar> shifted(const SymBand<Scalar>& A, const SymBand<Scalar>& B, const Scalar& sigma) {
  SymBand<Scalar> C(A.size(), std::max(A.bandwidth(), B.bandwidth()));
  C.band.topRows(A.bandwidth() + 1) += A.band;
  C.band.topRows(B.bandwidth() + 1) -= sigma * B.band;
  return C;
}

template <typename Scalar>
struct DiscreteForm {
  int N = 0;
  Scalar h = 0;
  SymBand<Scalar> A;
  SymBand<Scalar> B;
};

// Unknowns Z_1..Z_{N-1}; Z_0 = Z_N = 0 and ghost values Z_{-1} = Z_1, Z_{N+1} = Z_{N-1}
// enforce the clamped ends. Central differences on nodes, trapezoid weights.
template <typename Scalar>
DiscreteForm<Scalar> discretize(const TransformedForm& f, const Scalar& R, int N) {
  if (N < 50) throw std::invalid_argument("oracle grid needs N >= 50");
  DiscreteForm<Scalar> out;
  out.N = N;
  out.h = R / Scalar(N);
  const Scalar h = out.h;
  const int n = N - 1;
  out.A = SymBand<Scalar>(n, 2);
  out.B = SymBand<Scalar>(n, 1);
  const Scalar c1 = Scalar(f.c1), c0 = Scalar(f.c0);
  const Scalar lo = Scalar(1) / (h * h) - c1 / (Scalar(2) * h);
  const Scalar mid = Scalar(-2) / (h * h) + c0;
  const Scalar up = Scalar(1) / (h * h) + c1 / (Scalar(2) * h);
  for (int row = 0; row <= N; ++row) {
    int idx[3];
    Scalar cf[3];
    int cnt = 0;
    auto put = [&](int node, const Scalar& v) {
      if (node == -1) node = 1;
      if (node == N + 1) node = N - 1;
      if (node < 1 || node > N - 1) return;
      for (int t = 0; t < cnt; ++t)
        if (idx[t] == node - 1) {
          cf[t] += v;
          return;
        }
      idx[cnt] = node - 1;
      cf[cnt++] = v;
    };
    put(row - 1, lo);
    put(row, mid);
    put(row + 1, up);
    const Scalar w = (row == 0 || row == N) ? h / Scalar(2) : h;
    for (int a = 0; a < cnt; ++a)
      for (int b = 0; b <= a; ++b) {
        out.A.add(idx[a], idx[b], w * cf[a] * cf[b]);
      }
  }
  if (f.l2_denominator) {
    for (int j = 0; j < n; ++j) out.B.add(j, j, h);
  } else {
    const Scalar s = Scalar(f.s), k = Scalar(f.k);
    for (int cell = 0; cell < N; ++cell) {
      // E = (Z_{i+1} - Z_i) / h - s (Z_i + Z_{i+1}) / 2, V = (Z_i + Z_{i+1}) / 2
      const int nodes[2] = {cell, cell + 1};
      const Scalar e[2] = {Scalar(-1) / h - s / Scalar(2), Scalar(1) / h - s / Scalar(2)};
      for (int a = 0; a < 2; ++a) {
        if (nodes[a] < 1 || nodes[a] > N - 1) continue;
        for (int b = 0; b <= a; ++b) {
          if (nodes[b] < 1 || nodes[b] > N - 1) continue;
          out.B.add(nodes[a] - 1, nodes[b] - 1, h * (e[a] * e[b] + k / Scalar(4)));
        }
      }
    }
  }
  return out;
}

struct OracleSolution {
  double value = 0.0;
  Eigen::VectorXd z;  // interior values Z_1..Z_{N-1}, unit B-norm
  double h = 0.0;
  int N = 0;
};

OracleSolution smallest_eig(const DiscreteForm<double>& form, int index = 0);
double rayleigh_quotient(const DiscreteForm<double>& form, const Eigen::VectorXd& z);

OracleSolution oracle_solve(Problem problem, double m, int n, const Geometry& g, int N, int index = 0);
double oracle_eigenvalue(Problem problem, double m, int n, const Geometry& g, int N = 2000);

}  // namespace annulus

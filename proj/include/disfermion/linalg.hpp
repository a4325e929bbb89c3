#pragma once

#include <vector>
#include <complex>
#include "disfermion/gaussian.hpp"

namespace disfermion {

template <class T>
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<T> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, T()) {}
  T& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
};

/// Fraction-free Bareiss determinant over an integral domain (GInt or mpz via
/// GInt with zero imaginary part).  No rounding, no intermediate fractions.
inline GInt bareiss_det(DenseMatrix<GInt> m) {
  const int n = m.rows;
  if (n != m.cols) throw error("bareiss_det: matrix not square");
  if (n == 0) return GInt(1);
  GInt denom(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m(i, k).is_zero()) { p = i; break; }
      if (p < 0) return GInt(0);
      for (int j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)).divexact(denom);
    denom = m(k, k);
  }
  GInt det = m(n - 1, n - 1);
  return sign > 0 ? det : -det;
}

/// Gauss-Jordan inverse over the Gaussian rationals.  Throws on singularity.
inline DenseMatrix<GQ> gq_inverse(DenseMatrix<GQ> m) {
  const int n = m.rows;
  if (n != m.cols) throw error("gq_inverse: matrix not square");
  DenseMatrix<GQ> inv(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = GQ(1);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!m(i, k).is_zero()) { p = i; break; }
    if (p < 0) throw error("gq_inverse: singular matrix");
    if (p != k)
      for (int j = 0; j < n; ++j) { std::swap(m(k, j), m(p, j)); std::swap(inv(k, j), inv(p, j)); }
    GQ piv = m(k, k).inv();
    for (int j = 0; j < n; ++j) { m(k, j) *= piv; inv(k, j) *= piv; }
    for (int i = 0; i < n; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      GQ f = m(i, k);
      for (int j = 0; j < n; ++j) { m(i, j) -= f * m(k, j); inv(i, j) -= f * inv(k, j); }
    }
  }
  return inv;
}

/// det over a field, by ordinary elimination (used for Wick determinants of
/// exact two-point blocks).
inline GQ gq_det(DenseMatrix<GQ> m) {
  const int n = m.rows;
  if (n != m.cols) throw error("gq_det: matrix not square");
  GQ det(1);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!m(i, k).is_zero()) { p = i; break; }
    if (p < 0) return GQ(0);
    if (p != k) {
      for (int j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      det = -det;
    }
    det *= m(k, k);
    GQ piv = m(k, k).inv();
    for (int i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      GQ f = m(i, k) * piv;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Solve A x = b exactly over mpq; A square nonsingular.
inline std::vector<mpq_class> mpq_solve(std::vector<std::vector<mpq_class>> A,
                                        std::vector<mpq_class> b) {
  const int n = int(A.size());
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (A[i][k] != 0) { p = i; break; }
    if (p < 0) throw error("mpq_solve: singular system");
    std::swap(A[k], A[p]); std::swap(b[k], b[p]);
    mpq_class piv = A[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (A[i][k] == 0) continue;
      mpq_class f = A[i][k] / piv;
      for (int j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<mpq_class> x(n, mpq_class(0));
  for (int i = n - 1; i >= 0; --i) {
    mpq_class s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

/// Exact solve of a possibly overdetermined rational system; throws if the
/// system is inconsistent or underdetermined (rank < unknowns).  Used for the
/// monomial lattice-constant pinning, where consistency is the correctness
/// statement itself.
inline std::vector<mpq_class> mpq_solve_overdetermined(
    std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b) {
  const int m = int(A.size());
  if (m == 0) return {};
  const int n = int(A[0].size());
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int i = row; i < m; ++i)
      if (A[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(A[row], A[p]); std::swap(b[row], b[p]);
    mpq_class piv = A[row][col];
    for (int j = col; j < n; ++j) A[row][j] /= piv;
    b[row] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row || A[i][col] == 0) continue;
      mpq_class f = A[i][col];
      for (int j = col; j < n; ++j) A[i][j] -= f * A[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (int(pivot_col.size()) < n) throw error("mpq_solve_overdetermined: underdetermined system");
  for (int i = row; i < m; ++i)
    if (b[i] != 0) throw error("mpq_solve_overdetermined: inconsistent system");
  std::vector<mpq_class> x(n, mpq_class(0));
  for (int r = 0; r < n; ++r) x[pivot_col[r]] = b[r];
  return x;
}

/// Complex LU determinant with partial pivoting and column equilibration;
/// entries of mode matrices span many orders of magnitude.
inline std::complex<double> cdet(DenseMatrix<std::complex<double>> m) {
  const int n = m.rows;
  if (n == 0) return 1.0;
  std::complex<double> scale(1.0, 0.0);
  for (int j = 0; j < n; ++j) {
    double mx = 0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(m(i, j)));
    if (mx == 0) return 0.0;
    for (int i = 0; i < n; ++i) m(i, j) /= mx;
    scale *= mx;
  }
  std::complex<double> det = scale;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > best) { best = std::abs(m(i, k)); p = i; }
    if (best == 0) return 0.0;
    if (p != k) {
      for (int j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      det = -det;
    }
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      std::complex<double> f = m(i, k) / m(k, k);
      if (f == std::complex<double>(0.0, 0.0)) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

}  // namespace disfermion

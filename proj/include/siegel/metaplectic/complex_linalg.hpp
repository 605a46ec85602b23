#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "siegel/core/matrix.hpp"

namespace siegel::metaplectic {

using cplx = std::complex<double>;
using CMatrix = Matrix<cplx>;

inline CMatrix to_complex(const IntMatrix& m) {
  CMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = cplx(static_cast<double>(m(i, j)), 0.0);
  return r;
}

inline CMatrix scalar_identity(std::size_t n, cplx z) {
  CMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = z;
  return r;
}

/// Determinant by partial-pivot LU.
inline cplx det(CMatrix a) {
  const std::size_t n = a.rows();
  cplx d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
    if (a(p, c) == cplx(0.0)) return 0.0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      cplx f = a(i, c) / a(c, c);
      if (f == cplx(0.0)) continue;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

inline CMatrix inverse(const CMatrix& m) {
  const std::size_t n = m.rows();
  CMatrix a = m, inv = scalar_identity(n, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    cplx piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      cplx f = a(i, c);
      if (f == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Principal square root with the cut on the negative axis; -x maps to +i sqrt(x).
inline cplx principal_sqrt(cplx z) {
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
  return std::sqrt(z);
}

/// Gaussian integer with 128-bit parts, enough for exact small determinants.
struct GaussInt {
  __int128 re = 0, im = 0;
  GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
  GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
  GaussInt operator*(const GaussInt& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  bool is_zero() const { return re == 0 && im == 0; }
  /// Exact division; the caller guarantees divisibility.
  GaussInt operator/(const GaussInt& o) const {
    __int128 n = o.re * o.re + o.im * o.im;
    __int128 a = re * o.re + im * o.im, b = im * o.re - re * o.im;
    return {a / n, b / n};
  }
  cplx to_complex() const { return cplx(static_cast<double>(re), static_cast<double>(im)); }
};

/// det(D + i C) exactly, by fraction-free elimination.
inline GaussInt det_gaussian(const IntMatrix& C, const IntMatrix& D) {
  const std::size_t n = C.rows();
  if (n == 0) return {1, 0};
  std::vector<std::vector<GaussInt>> a(n, std::vector<GaussInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = {D(i, j), C(i, j)};
  GaussInt prev{1, 0};
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return {0, 0};
      std::swap(a[k], a[p]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  GaussInt d = a[n - 1][n - 1];
  if (neg) d = {-d.re, -d.im};
  return d;
}

}  // namespace siegel::metaplectic

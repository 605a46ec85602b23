#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "siegel/core/matrix.hpp"

namespace siegel {

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return detail::checked_mul(a / std::gcd(a, b), b < 0 ? -b : b);
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a,b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int moebius(std::int64_t n) {
  if (n <= 0) return 0;
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

/// Exact determinant by fraction-free elimination.
inline std::int64_t det(const IntMatrix& m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  if (n == 2) return detail::checked_sub(detail::checked_mul(m(0, 0), m(1, 1)), detail::checked_mul(m(0, 1), m(1, 0)));
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        if (a[i][j] > INT64_MAX || a[i][j] < INT64_MIN) throw Error(Errc::Overflow, "determinant overflow");
      }
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

/// Gaussian elimination over Q. Returns rank and the determinant (0 unless square and full rank).
inline std::pair<std::size_t, Rational> rank_det(RatMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  Rational d = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) {
      d = 0;
      continue;
    }
    if (p != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(r, j));
      d = -d;
    }
    d *= a(r, c);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  if (m != n || r < n) d = 0;
  return {r, d};
}

inline std::size_t rank(const RatMatrix& a) { return rank_det(a).first; }
inline std::size_t rank(const IntMatrix& a) { return rank_det(to_rational(a)).first; }
inline Rational det(const RatMatrix& a) { return rank_det(a).second; }

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline bool is_unimodular(const IntMatrix& m) {
  if (!m.square()) return false;
  auto d = det(m);
  return d == 1 || d == -1;
}

inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m)) throw Error(Errc::NotUnimodular, "matrix is not in GL(n,Z)");
  return to_integer(*inverse(to_rational(m)));
}

/// Smith form U*A*V = S with U, V unimodular. Invariant factors are nonnegative with d_i | d_{i+1}.
struct SmithForm {
  IntMatrix U, S, V;
  std::vector<std::int64_t> invariants() const {
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {
inline void row_op(IntMatrix& a, std::size_t dst, std::size_t src, std::int64_t f) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) = checked_sub(a(dst, j), checked_mul(f, a(src, j)));
}
inline void col_op(IntMatrix& a, std::size_t dst, std::size_t src, std::int64_t f) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) = checked_sub(a(i, dst), checked_mul(f, a(i, src)));
}
inline void swap_rows(IntMatrix& a, std::size_t i, std::size_t k) {
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
}
inline void swap_cols(IntMatrix& a, std::size_t i, std::size_t k) {
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, k));
}
inline void neg_row(IntMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
}
}  // namespace detail

inline SmithForm smith_form(const IntMatrix& A) {
  using namespace detail;
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm f{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  IntMatrix& S = f.S;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t bi = m, bj = n;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (best == 0 || std::llabs(S(i, j)) < best)) {
            best = std::llabs(S(i, j));
            bi = i;
            bj = j;
          }
      if (best == 0) return f;
      if (bi != t) {
        swap_rows(S, bi, t);
        swap_rows(f.U, bi, t);
      }
      if (bj != t) {
        swap_cols(S, bj, t);
        swap_cols(f.V, bj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        std::int64_t q = floor_div(S(i, t), S(t, t));
        if (q) {
          row_op(S, i, t, q);
          row_op(f.U, i, t, q);
        }
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        std::int64_t q = floor_div(S(t, j), S(t, t));
        if (q) {
          col_op(S, j, t, q);
          col_op(f.V, j, t, q);
        }
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = 0; j < n; ++j) S(t, j) = checked_add(S(t, j), S(bad, j));
      for (std::size_t j = 0; j < m; ++j) f.U(t, j) = checked_add(f.U(t, j), f.U(bad, j));
    }
    if (S(t, t) < 0) {
      neg_row(S, t);
      neg_row(f.U, t);
    }
  }
  return f;
}

/// Row Hermite form H = U*X: pivots positive, entries above a pivot reduced into [0, pivot), zero rows last.
struct HermiteForm {
  IntMatrix U, H;
  std::vector<std::size_t> pivots;
};

inline HermiteForm row_hermite(const IntMatrix& X) {
  using namespace detail;
  const std::size_t m = X.rows(), n = X.cols();
  HermiteForm h{IntMatrix::identity(m), X, {}};
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h.H(i, c) != 0 && (best == m || std::llabs(h.H(i, c)) < std::llabs(h.H(best, c)))) best = i;
      if (best == m) break;
      if (best != r) {
        swap_rows(h.H, best, r);
        swap_rows(h.U, best, r);
      }
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h.H(i, c) == 0) continue;
        std::int64_t q = floor_div(h.H(i, c), h.H(r, c));
        row_op(h.H, i, r, q);
        row_op(h.U, i, r, q);
        if (h.H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h.H(r, c) == 0) continue;
    if (h.H(r, c) < 0) {
      neg_row(h.H, r);
      neg_row(h.U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t q = floor_div(h.H(i, c), h.H(r, c));
      if (q) {
        row_op(h.H, i, r, q);
        row_op(h.U, i, r, q);
      }
    }
    h.pivots.push_back(c);
    ++r;
  }
  return h;
}

/// gcd of all maximal minors; zero when the matrix is rank deficient.
inline std::int64_t maximal_minor_gcd(const IntMatrix& X) {
  auto f = smith_form(X);
  std::int64_t p = 1;
  for (auto d : f.invariants()) p = detail::checked_mul(p, d);
  return p;
}

}  // namespace siegel

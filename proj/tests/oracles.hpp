// Independent reference computations used only by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "siegel/core/matrix.hpp"

namespace oracle {

using siegel::IntMatrix;
using siegel::Rational;

/// Discriminant form by brute force: x in (1/d)Z^n / Z^n with G x integral.
/// Returns the sorted list of q(x) mod 1.
inline std::vector<Rational> disc_q_values(const IntMatrix& G) {
  const std::size_t n = G.rows();
  // |det| by cofactor expansion on small matrices
  std::function<std::int64_t(const IntMatrix&)> cof = [&](const IntMatrix& m) -> std::int64_t {
    if (m.rows() == 1) return m(0, 0);
    std::int64_t s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      IntMatrix sub(m.rows() - 1, m.cols() - 1);
      for (std::size_t i = 1; i < m.rows(); ++i)
        for (std::size_t k = 0, c = 0; k < m.cols(); ++k)
          if (k != j) sub(i - 1, c++) = m(i, k);
      s += (j % 2 ? -1 : 1) * m(0, j) * cof(sub);
    }
    return s;
  };
  const std::int64_t d = std::llabs(cof(G));
  std::vector<Rational> out;
  std::vector<std::int64_t> y(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += G(i, j) * y[j];
      if (s % d != 0) ok = false;
    }
    if (ok) {
      Rational q = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += Rational(G(i, j) * y[i] * y[j]);
      q /= Rational(2 * d * d);
      out.push_back(siegel::frac(q));
    }
    std::size_t k = 0;
    while (k < n && ++y[k] == d) y[k++] = 0;
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Ramanujan tau(n) for n < N from the product q prod (1-q^n)^24.
inline std::vector<double> ramanujan_tau(int N) {
  std::vector<double> p(N, 0.0);
  p[0] = 1.0;
  for (int n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int k = N - 1; k >= n; --k) p[k] -= p[k - n];
  std::vector<double> tau(N, 0.0);
  for (int k = 1; k < N; ++k) tau[k] = p[k - 1];
  return tau;
}

inline std::complex<double> delta(std::complex<double> tau, int terms = 40) {
  static const auto t = ramanujan_tau(80);
  const std::complex<double> q = std::exp(std::complex<double>(0, 2 * M_PI) * tau);
  std::complex<double> s = 0, qn = q;
  for (int n = 1; n < terms; ++n) {
    s += t[n] * qn;
    qn *= q;
  }
  return s;
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2).
inline std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> B(n + 1);
  for (int m = 0; m <= n; ++m) {
    // Akiyama-Tanigawa
    std::vector<Rational> a(m + 1);
    for (int j = 0; j <= m; ++j) {
      a[j] = siegel::rat(1, j + 1);
      for (int i = j; i >= 1; --i) a[i - 1] = Rational(i) * (a[i - 1] - a[i]);
    }
    B[m] = a[0];
  }
  if (n >= 1) B[1] = siegel::rat(-1, 2);
  return B;
}

inline std::int64_t sigma(int k, std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      std::int64_t p = 1;
      for (int i = 0; i < k; ++i) p *= d;
      s += p;
    }
  return s;
}

/// Coefficient c_m of the classical Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
inline Rational eisenstein_coeff(int k, std::int64_t m) {
  if (m == 0) return 1;
  auto B = bernoulli(k);
  return Rational(-2 * k) / B[k] * Rational(sigma(k - 1, m));
}

inline std::complex<double> eisenstein_classical(int k, std::complex<double> tau, int terms = 60) {
  const std::complex<double> q = std::exp(std::complex<double>(0, 2 * M_PI) * tau);
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  auto& c = cache[{k, terms}];
  if (c.empty())
    for (int n = 0; n < terms; ++n) c.push_back(eisenstein_coeff(k, n).get_d());
  std::complex<double> s = 1.0, qn = q;
  for (int n = 1; n < terms; ++n) {
    s += c[n] * qn;
    qn *= q;
  }
  return s;
}

}  // namespace oracle

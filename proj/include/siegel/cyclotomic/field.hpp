#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "siegel/core/intmath.hpp"

namespace siegel::cyclotomic {

/// Q(zeta_M) with the power basis 1, zeta, ..., zeta^{phi(M)-1}.
class CyclotomicField {
 public:
  explicit CyclotomicField(std::int64_t M) : M_(M) {
    if (M < 1) throw Error(Errc::ConductorMismatch, "conductor must be positive");
    phi_ = static_cast<int>(euler_phi(M));
    poly_ = cyclotomic_polynomial(M);
    // x^j mod Phi_M for 0 <= j < M
    pow_.assign(M, std::vector<std::int64_t>(phi_, 0));
    std::vector<std::int64_t> cur(phi_ + 1, 0);
    cur[0] = 1;
    for (std::int64_t j = 0; j < M; ++j) {
      for (int k = 0; k < phi_; ++k) pow_[j][k] = cur[k];
      // multiply by x
      for (int k = phi_; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = 0;
      if (cur[phi_] != 0) {
        std::int64_t lead = cur[phi_];
        for (int k = 0; k <= phi_; ++k) cur[k] = detail::checked_sub(cur[k], detail::checked_mul(lead, poly_[k]));
      }
    }
    roots_.resize(M);
    for (std::int64_t j = 0; j < M; ++j) roots_[j] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(M));
  }

  std::int64_t conductor() const { return M_; }
  int degree() const { return phi_; }
  /// Coefficients of zeta^j in the power basis.
  const std::vector<std::int64_t>& power(std::int64_t j) const { return pow_[mod_floor(j, M_)]; }
  const std::vector<std::int64_t>& minimal_polynomial() const { return poly_; }
  std::complex<double> root(std::int64_t j) const { return roots_[mod_floor(j, M_)]; }

  /// Shared instance per conductor.
  static std::shared_ptr<const CyclotomicField> get(std::int64_t M) {
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const CyclotomicField>(M);
    cache.emplace(M, f);
    return f;
  }

  static std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t M) {
    // x^M - 1 divided by Phi_d for all proper divisors d
    std::vector<std::int64_t> num(M + 1, 0);
    num[0] = -1;
    num[M] = 1;
    for (std::int64_t d = 1; d < M; ++d) {
      if (M % d) continue;
      auto den = cyclotomic_polynomial(d);
      num = divide_monic(num, den);
    }
    return num;
  }

 private:
  static std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    const std::size_t db = b.size() - 1, da = a.size() - 1;
    std::vector<std::int64_t> q(da - db + 1, 0);
    for (std::size_t k = da + 1; k-- > db;) {
      std::int64_t c = a[k];
      q[k - db] = c;
      if (c == 0) continue;
      for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
    }
    return q;
  }

  std::int64_t M_;
  int phi_;
  std::vector<std::int64_t> poly_;
  std::vector<std::vector<std::int64_t>> pow_;
  std::vector<std::complex<double>> roots_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

}  // namespace siegel::cyclotomic

#pragma once

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <complex>
#include <mutex>
#include <map>
#include <vector>

#include "siegel/core/errors.hpp"
#include "siegel/core/intmath.hpp"
#include "siegel/core/rational.hpp"

namespace siegel::series {

struct SeriesConfig {
  int H = 40;          // coset height bound
  int Q = 32;          // quadrature points (per panel / per period)
  double Y = 12.0;     // y-cutoff for fundamental-domain integrals
  double y_coeff = 2.0;  // height of the horizontal line used for Fourier coefficients
  unsigned threads = 1;

  void validate() const {
    if (H < 1) throw Error(Errc::InvalidKey, "height bound H must be >= 1");
    if (Q < 8) throw Error(Errc::InvalidKey, "quadrature size Q must be >= 8");
    if (!(Y > 1)) throw Error(Errc::InvalidKey, "y-cutoff Y must exceed 1");
    if (!(y_coeff > 0)) throw Error(Errc::InvalidKey, "coefficient height must be positive");
  }
};

/// Checks the shared preconditions of the genus-1 series: k > 2 and 2k = sig mod 4.
inline void check_weight(const Rational& k, int sig, const Rational& min_exclusive = 2) {
  if (!is_integer(Rational(k * 2))) throw Error(Errc::ParityMismatch, "weight must be half-integral");
  if (k <= min_exclusive) throw Error(Errc::NonconvergentWeight, "weight " + k.get_str() + " is not above " + min_exclusive.get_str());
  if (mod_floor(to_i64(Rational(k * 2)) - sig, 4) != 0)
    throw Error(Errc::ParityMismatch, "weight " + k.get_str() + " violates 2k = sig mod 4 (sig " + std::to_string(sig) + ")");
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;

  static const GaussLegendre& get(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussLegendre q;
    for (double z : boost::math::legendre_p_zeros<double>(n)) {
      double dp = boost::math::legendre_p_prime(n, z);
      double wt = 2.0 / ((1 - z * z) * dp * dp);
      q.x.push_back(z);
      q.w.push_back(wt);
      if (z != 0.0) {
        q.x.push_back(-z);
        q.w.push_back(wt);
      }
    }
    return cache.emplace(n, std::move(q)).first->second;
  }

  /// Nodes mapped to [a, b] with weights including the Jacobian.
  void mapped(double a, double b, std::vector<double>& xs, std::vector<double>& ws) const {
    const double h = (b - a) / 2, m = (a + b) / 2;
    for (std::size_t i = 0; i < x.size(); ++i) {
      xs.push_back(m + h * x[i]);
      ws.push_back(h * w[i]);
    }
  }
};

/// e^{-k Log z}: the principal branch of z^{-k}.
inline std::complex<double> principal_pow_neg(std::complex<double> z, double k) { return std::exp(-k * std::log(z)); }

}  // namespace siegel::series

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "siegel/core/matrix.hpp"
#include "siegel/lattice/lattice.hpp"

namespace siegel::series {

/// q * pi^e with q rational and e a half-integer.
struct PiMonomial {
  Rational q = 1;
  Rational e = 0;
  bool operator==(const PiMonomial& o) const { return q == o.q && e == o.e; }
  PiMonomial operator*(const PiMonomial& o) const { return {q * o.q, e + o.e}; }
  PiMonomial operator/(const PiMonomial& o) const { return {q / o.q, e - o.e}; }
  double value() const { return std::exp(std::log(q.get_d()) + e.get_d() * std::log(M_PI)); }
  std::string str() const { return q.get_str() + " * pi^(" + e.get_str() + ")"; }
};

inline mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// Gamma(a) for a in (1/2)Z, a > 0: (n-1)! or (2n)!/(4^n n!) sqrt(pi).
inline PiMonomial gamma_exact(const Rational& a) {
  if (a <= 0 || !is_integer(Rational(a * 2))) throw Error(Errc::InvalidKey, "Gamma argument must be a positive half-integer");
  if (is_integer(a)) return {Rational(factorial(to_i64(a) - 1)), 0};
  const long n = to_i64(Rational(a - rat(1, 2)));
  mpz_class four_n;
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
  Rational q(factorial(2 * n), four_n * factorial(n));
  q.canonicalize();
  return {q, rat(1, 2)};
}

/// (4 pi)^p for p in (1/2)Z.
inline PiMonomial four_pi_pow(const Rational& p) {
  if (!is_integer(Rational(p * 2))) throw Error(Errc::InvalidKey, "power of 4 pi must be a half-integer");
  const long twice = to_i64(Rational(p * 2));  // 4^p = 2^{2p}
  mpz_class two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(twice)));
  Rational q = twice >= 0 ? Rational(two) : Rational(mpz_class(1), two);
  q.canonicalize();
  return {q, p};
}

/// c_{k,g} = pi^{g(g-1)/4} (4 pi)^{g(g+1)/2 - g k} prod_{l=1}^{g} Gamma(k - (g + l)/2).
struct PeterssonConstant {
  Rational k;
  int g;
  Rational pi_power;              // g(g-1)/4
  Rational four_pi_power;         // g(g+1)/2 - g k
  std::vector<Rational> gamma_args;
  PiMonomial exact;
  double value;
};

inline PeterssonConstant petersson_constant(const Rational& k, int g) {
  if (g < 1) throw Error(Errc::GenusUnsupported, "genus must be positive");
  if (!is_integer(Rational(k * 2))) throw Error(Errc::InvalidKey, "weight must be half-integral");
  if (k <= 2 * g) throw Error(Errc::WeightTooSmall, "need k > 2g");
  PeterssonConstant c{k, g, rat(g * (g - 1), 4), Rational(rat(g * (g + 1), 2) - Rational(k * g)), {}, {}, 0};
  if (!is_integer(Rational(c.pi_power * 2)))
    throw Error(Errc::GenusUnsupported, "pi^{g(g-1)/4} is not a half-integral power of pi");
  c.exact = PiMonomial{1, c.pi_power} * four_pi_pow(c.four_pi_power);
  for (int l = 1; l <= g; ++l) {
    c.gamma_args.push_back(k - rat(g + l, 2));
    c.exact = c.exact * gamma_exact(c.gamma_args.back());
  }
  c.value = c.exact.value();
  return c;
}

struct ConeCheck {
  double numeric, error_estimate, predicted, relative_error;
};

/// int_{y > 0} det y^{k-g-1} exp(-4 pi tr(T y)) dy against c_{k,g} det T^{(g+1)/2 - k}.
/// g = 2 uses y = (a, b; b, c) with b = sqrt(ac) u and nested adaptive Gauss-Kronrod.
inline ConeCheck cone_integral_check(const Rational& k, const RatMatrix& T, double tol = 1e-9) {
  const int g = static_cast<int>(T.rows());
  if (g < 1 || g > 2) throw Error(Errc::GenusUnsupported, "cone integral implemented for g <= 2");
  if (!lattice::is_positive_definite(T)) throw Error(Errc::InvalidKey, "T must be positive definite");
  const auto c = petersson_constant(k, g);
  const double kd = k.get_d();
  const double predicted = c.value * std::pow(det(T).get_d(), (g + 1) / 2.0 - kd);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0, val = 0;
  if (g == 1) {
    const double t = T(0, 0).get_d();
    val = GK::integrate([&](double y) { return std::pow(y, kd - 2) * std::exp(-4 * M_PI * t * y); }, 0.0,
                        std::numeric_limits<double>::infinity(), 15, tol, &err);
  } else {
    const double t11 = T(0, 0).get_d(), t12 = T(0, 1).get_d(), t22 = T(1, 1).get_d();
    const double n = kd - 3;
    double e_outer = 0;
    auto over_c = [&](double a) {
      double e_mid = 0;
      double r = GK::integrate(
          [&](double cc) {
            const double s = std::sqrt(a * cc);
            double e_in = 0;
            // exponent kept inside so that large s cannot overflow against the outer decay
            double in = GK::integrate(
                [&](double u) {
                  return std::pow(1 - u * u, n) * std::exp(-4 * M_PI * (t11 * a + t22 * cc + 2 * t12 * s * u));
                },
                -1.0, 1.0, 10, tol, &e_in);
            return std::pow(a * cc, n) * s * in;
          },
          0.0, std::numeric_limits<double>::infinity(), 12, tol, &e_mid);
      return r;
    };
    val = GK::integrate(over_c, 0.0, std::numeric_limits<double>::infinity(), 12, tol, &e_outer);
    err = e_outer;
  }
  return {val, err * std::abs(val), predicted, std::abs(val - predicted) / std::abs(predicted)};
}

}  // namespace siegel::series

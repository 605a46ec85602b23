#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "siegel/core/errors.hpp"

namespace siegel {

using Rational = mpq_class;

inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline mpz_class floor_of(const Rational& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

/// Representative of x mod 1 in [0,1).
inline Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

/// Representative of x mod m in [0,m).
inline Rational mod_rat(const Rational& x, const Rational& m) {
  Rational q = x / m;
  return x - Rational(floor_of(q)) * m;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(Errc::Overflow, "integer does not fit in 64 bits");
  return z.get_si();
}

inline std::int64_t to_i64(const Rational& x) {
  if (!is_integer(x)) throw Error(Errc::InvalidKey, "expected an integer, got " + x.get_str());
  return to_i64(mpz_class(x.get_num()));
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(Errc::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace siegel

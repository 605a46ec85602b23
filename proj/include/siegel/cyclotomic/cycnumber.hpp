#pragma once

#include <complex>
#include <string>
#include <vector>

#include "siegel/cyclotomic/field.hpp"

namespace siegel::cyclotomic {

/// Exact element of Q(zeta_M). A default-constructed value is zero and carries no field.
class CycNumber {
 public:
  CycNumber() = default;
  explicit CycNumber(FieldPtr f) : f_(std::move(f)), c_(f_->degree(), 0) {
    if (!f_) throw Error(Errc::ConductorMismatch, "null field");
  }
  /// Integer constant; zero carries no field.
  explicit CycNumber(int v) {
    if (v != 0) {
      f_ = CyclotomicField::get(1);
      c_.assign(1, Rational(v));
    }
  }
  CycNumber(FieldPtr f, std::vector<Rational> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != f_->degree()) throw Error(Errc::DimensionMismatch, "coefficient count differs from field degree");
  }
  CycNumber(FieldPtr f, const Rational& r) : CycNumber(std::move(f)) { c_[0] = r; }

  /// zeta_M^j.
  static CycNumber root(const FieldPtr& f, std::int64_t j) {
    CycNumber z(f);
    const auto& p = f->power(j);
    for (int k = 0; k < f->degree(); ++k) z.c_[k] = Rational(static_cast<long>(p[k]));
    return z;
  }

  const FieldPtr& field() const { return f_; }
  std::int64_t conductor() const { return f_ ? f_->conductor() : 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Same number written in Q(zeta_L), L a multiple of the conductor.
  CycNumber embed(const FieldPtr& target) const {
    if (!f_) return CycNumber(target);
    if (target->conductor() % f_->conductor() != 0) throw Error(Errc::ConductorMismatch, "target conductor is not a multiple");
    if (target->conductor() == f_->conductor()) return *this;
    const std::int64_t step = target->conductor() / f_->conductor();
    CycNumber r(target);
    for (int j = 0; j < f_->degree(); ++j) {
      if (c_[j] == 0) continue;
      const auto& p = target->power(j * step);
      for (int k = 0; k < target->degree(); ++k)
        if (p[k]) r.c_[k] += c_[j] * static_cast<long>(p[k]);
    }
    return r;
  }

  CycNumber operator+(const CycNumber& o) const {
    auto [a, b] = align(*this, o);
    if (!a.f_) return a;
    for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
    return a;
  }
  CycNumber operator-(const CycNumber& o) const { return *this + (-o); }
  CycNumber operator-() const {
    CycNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  CycNumber operator*(const CycNumber& o) const {
    auto [a, b] = align(*this, o);
    if (!a.f_) return a;
    const int n = a.f_->degree();
    std::vector<Rational> buf(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < n; ++j)
        if (b.c_[j] != 0) buf[i + j] += a.c_[i] * b.c_[j];
    }
    return reduce(a.f_, buf);
  }
  CycNumber operator*(const Rational& s) const {
    CycNumber r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
  CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

  bool operator==(const CycNumber& o) const {
    auto [a, b] = align(*this, o);
    return a.c_ == b.c_;
  }
  bool operator!=(const CycNumber& o) const { return !(*this == o); }

  /// Image under zeta -> zeta^{-1}.
  CycNumber conj() const {
    if (!f_) return *this;
    CycNumber r(f_);
    const std::int64_t M = f_->conductor();
    for (int j = 0; j < f_->degree(); ++j) {
      if (c_[j] == 0) continue;
      const auto& p = f_->power(M - j);
      for (int k = 0; k < f_->degree(); ++k)
        if (p[k]) r.c_[k] += c_[j] * static_cast<long>(p[k]);
    }
    return r;
  }

  CycNumber pow(long e) const {
    if (e < 0) throw Error(Errc::InvalidKey, "negative exponent");
    CycNumber r = f_ ? CycNumber(f_, Rational(1)) : CycNumber(CyclotomicField::get(1), Rational(1));
    CycNumber b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Rational value if the number lies in Q.
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    for (int j = 0; j < static_cast<int>(c_.size()); ++j)
      if (c_[j] != 0) z += c_[j].get_d() * f_->root(j);
    return z;
  }

  std::string str() const {
    std::string s = "Q(zeta_" + std::to_string(conductor()) + ")[";
    for (std::size_t k = 0; k < c_.size(); ++k) s += (k ? "," : "") + c_[k].get_str();
    return s + "]";
  }

  static CycNumber reduce(const FieldPtr& f, const std::vector<Rational>& buf) {
    const int n = f->degree();
    CycNumber r(f);
    for (int k = 0; k < n && k < static_cast<int>(buf.size()); ++k) r.c_[k] = buf[k];
    for (int d = n; d < static_cast<int>(buf.size()); ++d) {
      if (buf[d] == 0) continue;
      const auto& p = f->power(d);
      for (int k = 0; k < n; ++k)
        if (p[k]) r.c_[k] += buf[d] * static_cast<long>(p[k]);
    }
    return r;
  }

 private:
  static std::pair<CycNumber, CycNumber> align(const CycNumber& a, const CycNumber& b) {
    if (!a.f_ && !b.f_) return {a, b};
    if (!a.f_) return {CycNumber(b.f_), b};
    if (!b.f_) return {a, CycNumber(a.f_)};
    if (a.f_->conductor() == b.f_->conductor()) return {a, b};
    auto L = CyclotomicField::get(lcm64(a.f_->conductor(), b.f_->conductor()));
    return {a.embed(L), b.embed(L)};
  }

  FieldPtr f_;
  std::vector<Rational> c_;
};

/// e(x) = exp(2 pi i x) in Q(zeta_M); the denominator of x must divide M.
inline CycNumber e_of(const Rational& x, std::int64_t M) {
  Rational y = frac(x) * static_cast<long>(M);
  if (!is_integer(y)) throw Error(Errc::ConductorMismatch, "e(" + x.get_str() + ") is not in Q(zeta_" + std::to_string(M) + ")");
  return CycNumber::root(CyclotomicField::get(M), to_i64(y));
}

}  // namespace siegel::cyclotomic

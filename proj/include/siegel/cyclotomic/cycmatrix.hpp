#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "siegel/cyclotomic/cycnumber.hpp"

namespace siegel::cyclotomic {

/// Exact matrix over Q(zeta_M), stored as scale * (matrix over Z[zeta_M]).
/// The integer part is kept primitive (coefficient content 1) with scale > 0,
/// so equal matrices have identical representations.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(FieldPtr f, std::size_t r, std::size_t c)
      : f_(std::move(f)), rows_(r), cols_(c), scale_(0), a_(r * c * f_->degree(), 0) {}

  static CycMatrix identity(const FieldPtr& f, std::size_t n) {
    CycMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.coef(i, i, 0) = 1;
    m.scale_ = 1;
    return m;
  }

  /// Monomial matrix: column j has value zeta^{exps[j]} * s in row perm[j] (or is zero when perm[j] < 0).
  static CycMatrix monomial(const FieldPtr& f, const std::vector<int>& perm, const std::vector<std::int64_t>& exps,
                            const Rational& s = 1) {
    const std::size_t n = perm.size();
    CycMatrix m(f, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      if (perm[j] < 0) continue;
      const auto& p = f->power(exps[j]);
      for (int k = 0; k < f->degree(); ++k) m.coef(perm[j], j, k) = p[k];
    }
    m.scale_ = s;
    m.normalize();
    return m;
  }

  /// Entry (i,j) = c * zeta^{E(i,j)}.
  static CycMatrix from_exponents(const FieldPtr& f, const CycNumber& c, const std::vector<std::vector<std::int64_t>>& E) {
    const std::size_t r = E.size(), cc = r ? E[0].size() : 0;
    // write c = s * (integer vector)
    Rational s;
    std::vector<std::int64_t> ci = integer_part(c.embed(f), s);
    CycMatrix m(f, r, cc);
    const int n = f->degree();
    std::vector<__int128> buf(2 * n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cc; ++j) {
        const auto& z = f->power(E[i][j]);
        std::fill(buf.begin(), buf.end(), 0);
        for (int a = 0; a < n; ++a)
          if (ci[a])
            for (int b = 0; b < n; ++b) buf[a + b] += static_cast<__int128>(ci[a]) * z[b];
        m.store_reduced(i, j, buf);
      }
    m.scale_ = s;
    m.normalize();
    return m;
  }

  static CycMatrix from_entries(const FieldPtr& f, const Matrix<CycNumber>& E) {
    CycMatrix m(f, E.rows(), E.cols());
    // common denominator
    mpz_class den = 1;
    for (const auto& x : E.data()) {
      const CycNumber y = x.embed(f);
      for (const auto& q : y.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
    for (std::size_t i = 0; i < E.rows(); ++i)
      for (std::size_t j = 0; j < E.cols(); ++j) {
        auto v = E(i, j).embed(f).coeffs();
        for (int k = 0; k < f->degree(); ++k) m.coef(i, j, k) = to_i64(Rational(v[k] * Rational(den)));
      }
    m.scale_ = Rational(1) / Rational(den);
    m.normalize();
    return m;
  }

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& scale() const { return scale_; }

  CycNumber entry(std::size_t i, std::size_t j) const {
    std::vector<Rational> c(f_->degree());
    for (int k = 0; k < f_->degree(); ++k) c[k] = scale_ * static_cast<long>(coef(i, j, k));
    return CycNumber(f_, std::move(c));
  }
  bool entry_is_zero(std::size_t i, std::size_t j) const {
    const std::int64_t* p = &a_[(i * cols_ + j) * f_->degree()];
    for (int k = 0; k < f_->degree(); ++k)
      if (p[k]) return false;
    return true;
  }

  CycMatrix operator*(const CycMatrix& o) const {
    if (cols_ != o.rows_) throw Error(Errc::DimensionMismatch, "CycMatrix product shape mismatch");
    auto [A, B] = align(*this, o);
    const int n = A.f_->degree();
    CycMatrix r(A.f_, A.rows_, B.cols_);
    std::vector<__int128> buf(2 * n);
    // column nonzero structure of B to skip zeros
    for (std::size_t i = 0; i < A.rows_; ++i)
      for (std::size_t j = 0; j < B.cols_; ++j) {
        std::fill(buf.begin(), buf.end(), 0);
        bool any = false;
        for (std::size_t l = 0; l < A.cols_; ++l) {
          const std::int64_t* x = &A.a_[(i * A.cols_ + l) * n];
          const std::int64_t* y = &B.a_[(l * B.cols_ + j) * n];
          for (int a = 0; a < n; ++a) {
            if (!x[a]) continue;
            for (int b = 0; b < n; ++b)
              if (y[b]) {
                buf[a + b] += static_cast<__int128>(x[a]) * y[b];
                any = true;
              }
          }
        }
        if (any) r.store_reduced(i, j, buf);
      }
    r.scale_ = A.scale_ * B.scale_;
    r.normalize();
    return r;
  }

  CycMatrix operator+(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "CycMatrix sum shape mismatch");
    auto [A, B] = align(*this, o);
    if (A.scale_ == 0) return B;
    if (B.scale_ == 0) return A;
    // common scale s = gcd(num)/lcm(den)
    mpz_class gn, ld;
    mpz_gcd(gn.get_mpz_t(), A.scale_.get_num_mpz_t(), B.scale_.get_num_mpz_t());
    mpz_lcm(ld.get_mpz_t(), A.scale_.get_den_mpz_t(), B.scale_.get_den_mpz_t());
    Rational s(gn, ld);
    s.canonicalize();
    const std::int64_t fa = to_i64(Rational(A.scale_ / s)), fb = to_i64(Rational(B.scale_ / s));
    CycMatrix r = A;
    for (std::size_t k = 0; k < r.a_.size(); ++k)
      r.a_[k] = detail::checked_add(detail::checked_mul(fa, A.a_[k]), detail::checked_mul(fb, B.a_[k]));
    r.scale_ = s;
    r.normalize();
    return r;
  }
  CycMatrix operator-() const {
    CycMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  CycMatrix operator-(const CycMatrix& o) const { return *this + (-o); }

  CycMatrix scaled(const CycNumber& c) const {
    Rational s;
    auto ci = integer_part(c.embed(f_), s);
    const int n = f_->degree();
    CycMatrix r(f_, rows_, cols_);
    std::vector<__int128> buf(2 * n);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::fill(buf.begin(), buf.end(), 0);
        const std::int64_t* x = &a_[(i * cols_ + j) * n];
        for (int a = 0; a < n; ++a)
          if (x[a])
            for (int b = 0; b < n; ++b) buf[a + b] += static_cast<__int128>(x[a]) * ci[b];
        r.store_reduced(i, j, buf);
      }
    r.scale_ = scale_ * s;
    r.normalize();
    return r;
  }

  bool operator==(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    auto [A, B] = align(*this, o);
    return A.scale_ == B.scale_ && (A.scale_ == 0 || A.a_ == B.a_);
  }
  bool operator!=(const CycMatrix& o) const { return !(*this == o); }

  CycMatrix transpose() const {
    CycMatrix r(f_, cols_, rows_);
    const int n = f_->degree();
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        for (int k = 0; k < n; ++k) r.coef(j, i, k) = coef(i, j, k);
    r.scale_ = scale_;
    return r;
  }

  /// Conjugate transpose.
  CycMatrix adjoint() const {
    CycMatrix r(f_, cols_, rows_);
    const int n = f_->degree();
    const std::int64_t M = f_->conductor();
    std::vector<__int128> buf(2 * n);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::fill(buf.begin(), buf.end(), 0);
        for (int k = 0; k < n; ++k) {
          std::int64_t c = coef(i, j, k);
          if (!c) continue;
          const auto& p = f_->power(M - k);
          for (int t = 0; t < n; ++t) buf[t] += static_cast<__int128>(c) * p[t];
        }
        r.store_reduced(j, i, buf);
      }
    r.scale_ = scale_;
    r.normalize();
    return r;
  }

  /// Kronecker product, row index (i1, i2) -> i1 * rows(B) + i2.
  CycMatrix kron(const CycMatrix& o) const {
    auto [A, B] = align(*this, o);
    const int n = A.f_->degree();
    CycMatrix r(A.f_, A.rows_ * B.rows_, A.cols_ * B.cols_);
    std::vector<__int128> buf(2 * n);
    for (std::size_t i1 = 0; i1 < A.rows_; ++i1)
      for (std::size_t j1 = 0; j1 < A.cols_; ++j1) {
        if (A.entry_is_zero(i1, j1)) continue;
        const std::int64_t* x = &A.a_[(i1 * A.cols_ + j1) * n];
        for (std::size_t i2 = 0; i2 < B.rows_; ++i2)
          for (std::size_t j2 = 0; j2 < B.cols_; ++j2) {
            const std::int64_t* y = &B.a_[(i2 * B.cols_ + j2) * n];
            std::fill(buf.begin(), buf.end(), 0);
            for (int a = 0; a < n; ++a)
              if (x[a])
                for (int b = 0; b < n; ++b) buf[a + b] += static_cast<__int128>(x[a]) * y[b];
            r.store_reduced(i1 * B.rows_ + i2, j1 * B.cols_ + j2, buf);
          }
      }
    r.scale_ = A.scale_ * B.scale_;
    r.normalize();
    return r;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(f_, rows_); }

  CycMatrix embed(const FieldPtr& target) const {
    if (target->conductor() == f_->conductor()) return *this;
    if (target->conductor() % f_->conductor() != 0) throw Error(Errc::ConductorMismatch, "target conductor is not a multiple");
    const std::int64_t step = target->conductor() / f_->conductor();
    const int n = f_->degree(), m = target->degree();
    CycMatrix r(target, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        for (int k = 0; k < n; ++k) {
          std::int64_t c = coef(i, j, k);
          if (!c) continue;
          const auto& p = target->power(k * step);
          for (int t = 0; t < m; ++t) r.coef(i, j, t) = detail::checked_add(r.coef(i, j, t), detail::checked_mul(c, p[t]));
        }
    r.scale_ = scale_;
    r.normalize();
    return r;
  }

  Matrix<std::complex<double>> to_complex() const {
    Matrix<std::complex<double>> r(rows_, cols_);
    const int n = f_->degree();
    const double s = scale_.get_d();
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::complex<double> z = 0;
        for (int k = 0; k < n; ++k)
          if (coef(i, j, k)) z += static_cast<double>(coef(i, j, k)) * f_->root(k);
        r(i, j) = s * z;
      }
    return r;
  }

  Matrix<CycNumber> to_entries() const {
    Matrix<CycNumber> r(rows_, cols_, CycNumber());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = entry(i, j);
    return r;
  }

 private:
  std::int64_t& coef(std::size_t i, std::size_t j, int k) { return a_[(i * cols_ + j) * f_->degree() + k]; }
  std::int64_t coef(std::size_t i, std::size_t j, int k) const { return a_[(i * cols_ + j) * f_->degree() + k]; }

  void store_reduced(std::size_t i, std::size_t j, const std::vector<__int128>& buf) {
    const int n = f_->degree();
    std::vector<__int128> out(buf.begin(), buf.begin() + n);
    for (int d = n; d < static_cast<int>(buf.size()); ++d) {
      if (!buf[d]) continue;
      const auto& p = f_->power(d);
      for (int k = 0; k < n; ++k)
        if (p[k]) out[k] += buf[d] * p[k];
    }
    for (int k = 0; k < n; ++k) {
      if (out[k] > INT64_MAX || out[k] < INT64_MIN) throw Error(Errc::Overflow, "cyclotomic matrix coefficient overflow");
      coef(i, j, k) = static_cast<std::int64_t>(out[k]);
    }
  }

  void normalize() {
    std::int64_t g = 0;
    for (auto x : a_) g = std::gcd(g, x);
    if (g == 0 || scale_ == 0) {
      std::fill(a_.begin(), a_.end(), 0);
      scale_ = 0;
      return;
    }
    if (scale_ < 0) {
      scale_ = -scale_;
      g = -g;
    }
    if (g != 1)
      for (auto& x : a_) x /= g;
    scale_ *= static_cast<long>(g < 0 ? -g : g);
  }

  static std::vector<std::int64_t> integer_part(const CycNumber& c, Rational& s) {
    mpz_class den = 1;
    for (const auto& q : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<std::int64_t> v(c.coeffs().size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = to_i64(Rational(c.coeffs()[k] * Rational(den)));
    s = Rational(1) / Rational(den);
    return v;
  }

  static std::pair<CycMatrix, CycMatrix> align(const CycMatrix& a, const CycMatrix& b) {
    if (a.f_->conductor() == b.f_->conductor()) return {a, b};
    auto L = CyclotomicField::get(lcm64(a.f_->conductor(), b.f_->conductor()));
    return {a.embed(L), b.embed(L)};
  }

  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  Rational scale_ = 0;
  std::vector<std::int64_t> a_;
};

}  // namespace siegel::cyclotomic

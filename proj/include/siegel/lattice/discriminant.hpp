#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "siegel/lattice/lattice.hpp"

namespace siegel::lattice {

/// An element of Q/Z kept as its representative in [0,1).
class QmodZ {
 public:
  QmodZ() = default;
  explicit QmodZ(const Rational& x) : v_(frac(x)) {}
  const Rational& value() const { return v_; }
  QmodZ operator+(const QmodZ& o) const { return QmodZ(v_ + o.v_); }
  QmodZ operator-() const { return QmodZ(-v_); }
  bool operator==(const QmodZ& o) const { return v_ == o.v_; }
  bool operator!=(const QmodZ& o) const { return v_ != o.v_; }
  std::string str() const { return v_.get_str(); }

 private:
  Rational v_ = 0;
};

/// Tuple of group elements (by index), i.e. an element of D^g.
using DiscTuple = std::vector<int>;

/// Canonical representative of the class of T modulo half-integral symmetric matrices:
/// diagonal entries in [0,1), off-diagonal entries in [0,1/2).
using MomentClass = RatMatrix;

/// Finite quadratic module L'/L with its Q/Z-valued form.
/// Elements are encoded in mixed radix over the nontrivial elementary divisors,
/// first generator least significant.
class DiscriminantGroup {
 public:
  explicit DiscriminantGroup(const EvenLattice& L) : lattice_(L) {
    const std::size_t n = L.rank();
    auto sf = smith_form(L.gram());
    V_ = sf.V;
    Vinv_ = inverse_unimodular(sf.V);
    for (std::size_t i = 0; i < n; ++i) {
      if (sf.S(i, i) > 1) {
        divisors_.push_back(sf.S(i, i));
        slots_.push_back(i);
      }
    }
    order_ = 1;
    for (auto d : divisors_) order_ = detail::checked_mul(order_, d);
    if (order_ > 4096) throw Error(Errc::SizeExceeded, "discriminant group larger than 4096 elements");

    // generator vectors g_i = V e_i / d_i in lattice coordinates
    const std::size_t r = divisors_.size();
    gens_.assign(r, std::vector<Rational>(n));
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < n; ++j) gens_[k][j] = rat(static_cast<long>(V_(j, slots_[k])), static_cast<long>(divisors_[k]));

    // Gram of generators: q(g_i) and b(g_i, g_j)
    RatMatrix G = to_rational(L.gram());
    gq_.assign(r, 0);
    gb_.assign(r, std::vector<Rational>(r, 0));
    level_ = 1;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) s += gens_[a][i] * G(i, j) * gens_[b][j];
        gb_[a][b] = s;
        if (a == b) gq_[a] = s / 2;
      }
    for (std::size_t a = 0; a < r; ++a) {
      level_ = lcm64(level_, to_i64(mpz_class(frac(gq_[a]).get_den())));
      for (std::size_t b = a + 1; b < r; ++b) level_ = lcm64(level_, to_i64(mpz_class(frac(gb_[a][b]).get_den())));
    }

    // tables of q, b scaled by the level (b lives in (1/N)Z/Z since 2q does)
    const int sz = static_cast<int>(order_);
    coords_.resize(sz);
    for (int x = 0; x < sz; ++x) coords_[x] = decode(x);
    qN_.resize(sz);
    for (int x = 0; x < sz; ++x) qN_[x] = scaled_mod(q_exact(coords_[x]));
    bN_.assign(static_cast<std::size_t>(sz) * sz, 0);
    for (int x = 0; x < sz; ++x)
      for (int y = x; y < sz; ++y) {
        auto v = scaled_mod(b_exact(coords_[x], coords_[y]));
        bN_[static_cast<std::size_t>(x) * sz + y] = bN_[static_cast<std::size_t>(y) * sz + x] = v;
      }
    add_.resize(static_cast<std::size_t>(sz) * sz);
    for (int x = 0; x < sz; ++x)
      for (int y = 0; y < sz; ++y) {
        std::vector<std::int64_t> c(r);
        for (std::size_t k = 0; k < r; ++k) c[k] = (coords_[x][k] + coords_[y][k]) % divisors_[k];
        add_[static_cast<std::size_t>(x) * sz + y] = encode(c);
      }
    neg_.resize(sz);
    for (int x = 0; x < sz; ++x) {
      std::vector<std::int64_t> c(r);
      for (std::size_t k = 0; k < r; ++k) c[k] = (divisors_[k] - coords_[x][k]) % divisors_[k];
      neg_[x] = encode(c);
    }
  }

  const EvenLattice& lattice() const { return lattice_; }
  int order() const { return static_cast<int>(order_); }
  std::int64_t level() const { return level_; }
  const std::vector<std::int64_t>& elementary_divisors() const { return divisors_; }
  int signature() const { return lattice_.signature(); }

  const std::vector<std::int64_t>& coordinates(int x) const { return coords_.at(x); }
  int encode(const std::vector<std::int64_t>& c) const {
    std::int64_t idx = 0, stride = 1;
    for (std::size_t k = 0; k < divisors_.size(); ++k) {
      idx += mod_floor(c[k], divisors_[k]) * stride;
      stride *= divisors_[k];
    }
    return static_cast<int>(idx);
  }

  int add(int x, int y) const { return add_[static_cast<std::size_t>(x) * order_ + y]; }
  int neg(int x) const { return neg_[x]; }
  int sub(int x, int y) const { return add(x, neg(y)); }
  int mul(std::int64_t n, int x) const {
    std::vector<std::int64_t> c(divisors_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = mod_floor(detail::checked_mul(n, coords_[x][k]), divisors_[k]);
    return encode(c);
  }

  /// q(x) as an integer modulo N, i.e. q(x) = qN(x)/N mod 1.
  std::int64_t qN(int x) const { return qN_[x]; }
  /// (x,y) as an integer modulo N.
  std::int64_t bN(int x, int y) const { return bN_[static_cast<std::size_t>(x) * order_ + y]; }
  QmodZ q(int x) const { return QmodZ(rat(static_cast<long>(qN_[x]), static_cast<long>(level_))); }
  QmodZ b(int x, int y) const { return QmodZ(rat(static_cast<long>(bN(x, y)), static_cast<long>(level_))); }

  /// Representative vector of x in L' (lattice coordinates).
  std::vector<Rational> vector_of(int x) const {
    std::vector<Rational> v(lattice_.rank(), 0);
    for (std::size_t k = 0; k < divisors_.size(); ++k)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rational(static_cast<long>(coords_[x][k])) * gens_[k][j];
    return v;
  }

  /// Class of a rational vector x (lattice coordinates); nullopt when x is not in L'.
  std::optional<int> element_of(const std::vector<Rational>& x) const {
    const std::size_t n = lattice_.rank();
    if (x.size() != n) throw Error(Errc::DimensionMismatch, "vector length differs from lattice rank");
    // membership in L': G x integral
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += Rational(static_cast<long>(lattice_.gram()(i, j))) * x[j];
      if (!is_integer(s)) return std::nullopt;
    }
    std::vector<std::int64_t> c(divisors_.size());
    for (std::size_t k = 0; k < divisors_.size(); ++k) {
      Rational y = 0;
      for (std::size_t j = 0; j < n; ++j) y += Rational(static_cast<long>(Vinv_(slots_[k], j))) * x[j];
      c[k] = to_i64(Rational(y * static_cast<long>(divisors_[k])));
    }
    return encode(c);
  }

  /// Column transform of the Smith form of the Gram matrix.
  const IntMatrix& smith_V() const { return V_; }

  /// Moment class of a tuple alpha in D^g.
  MomentClass moment_class(const DiscTuple& alpha) const {
    const std::size_t g = alpha.size();
    MomentClass m(g, g);
    const Rational half = rat(1, 2);
    for (std::size_t i = 0; i < g; ++i) {
      m(i, i) = q(alpha[i]).value();
      for (std::size_t j = i + 1; j < g; ++j) {
        Rational v = mod_rat(b(alpha[i], alpha[j]).value() / 2, half);
        m(i, j) = m(j, i) = v;
      }
    }
    return m;
  }

  /// T in q(alpha) + half-integral symmetric matrices.
  bool congruent(const RatMatrix& T, const DiscTuple& alpha) const {
    if (T.rows() != alpha.size() || !T.is_symmetric()) return false;
    return canonical_moment(T) == moment_class(alpha);
  }

  static MomentClass canonical_moment(const RatMatrix& T) {
    MomentClass m(T.rows(), T.cols());
    const Rational half = rat(1, 2);
    for (std::size_t i = 0; i < T.rows(); ++i)
      for (std::size_t j = 0; j < T.cols(); ++j) m(i, j) = i == j ? frac(T(i, j)) : mod_rat(T(i, j), half);
    return m;
  }

  /// Index of a tuple in D^g, lexicographic with the first entry most significant.
  std::int64_t tuple_index(const DiscTuple& a) const {
    std::int64_t idx = 0;
    for (int x : a) idx = idx * order_ + x;
    return idx;
  }
  DiscTuple tuple_at(std::int64_t idx, int g) const {
    DiscTuple a(g);
    for (int i = g - 1; i >= 0; --i) {
      a[i] = static_cast<int>(idx % order_);
      idx /= order_;
    }
    return a;
  }
  std::int64_t tuple_count(int g, std::int64_t bound = std::int64_t(1) << 24) const {
    std::int64_t c = 1;
    for (int i = 0; i < g; ++i) {
      c = detail::checked_mul(c, order_);
      if (c > bound) throw Error(Errc::SizeExceeded, "|D|^g exceeds enumeration bound");
    }
    return c;
  }

  /// alpha * A for an integer g x h matrix: (alpha A)_j = sum_i A_ij alpha_i.
  DiscTuple act(const DiscTuple& alpha, const IntMatrix& A) const {
    if (A.rows() != alpha.size()) throw Error(Errc::DimensionMismatch, "tuple/matrix size mismatch");
    DiscTuple r(A.cols(), 0);
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t i = 0; i < A.rows(); ++i)
        if (A(i, j)) r[j] = add(r[j], mul(A(i, j), alpha[i]));
    return r;
  }

  /// sum_i (beta_i, alpha_i) scaled by N.
  std::int64_t pairingN(const DiscTuple& beta, const DiscTuple& alpha) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) s += bN(beta[i], alpha[i]);
    return mod_floor(s, level_);
  }

  /// tr(q(alpha) B) scaled by N.
  std::int64_t trace_qB_N(const DiscTuple& alpha, const IntMatrix& B) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      s = mod_floor(s + mod_floor(B(i, i), level_) * qN(alpha[i]), level_);
      for (std::size_t j = i + 1; j < alpha.size(); ++j)
        s = mod_floor(s + mod_floor(B(i, j), level_) * bN(alpha[i], alpha[j]), level_);
    }
    return s;
  }

 private:
  std::vector<std::int64_t> decode(std::int64_t idx) const {
    std::vector<std::int64_t> c(divisors_.size());
    for (std::size_t k = 0; k < divisors_.size(); ++k) {
      c[k] = idx % divisors_[k];
      idx /= divisors_[k];
    }
    return c;
  }
  Rational q_exact(const std::vector<std::int64_t>& c) const {
    Rational s = 0;
    for (std::size_t a = 0; a < c.size(); ++a) {
      s += Rational(static_cast<long>(c[a] * c[a])) * gq_[a];
      for (std::size_t b = a + 1; b < c.size(); ++b) s += Rational(static_cast<long>(c[a] * c[b])) * gb_[a][b];
    }
    return s;
  }
  Rational b_exact(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
    Rational s = 0;
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b) s += Rational(static_cast<long>(x[a] * y[b])) * gb_[a][b];
    return s;
  }
  std::int64_t scaled_mod(const Rational& v) const { return to_i64(Rational(frac(v) * static_cast<long>(level_))); }

  EvenLattice lattice_;
  IntMatrix V_, Vinv_;
  std::vector<std::int64_t> divisors_;
  std::vector<std::size_t> slots_;
  std::int64_t order_ = 1, level_ = 1;
  std::vector<std::vector<Rational>> gens_;
  std::vector<Rational> gq_;
  std::vector<std::vector<Rational>> gb_;
  std::vector<std::vector<std::int64_t>> coords_;
  std::vector<std::int64_t> qN_, bN_;
  std::vector<int> add_, neg_;
};

using DiscPtr = std::shared_ptr<const DiscriminantGroup>;

inline DiscPtr discriminant(const EvenLattice& L) { return std::make_shared<const DiscriminantGroup>(L); }

/// Visit all tuples of D^g in lexicographic order.
inline void enumerate_tuples(const DiscriminantGroup& D, int g, const std::function<void(const DiscTuple&)>& f,
                             std::int64_t bound = std::int64_t(1) << 24) {
  const std::int64_t n = D.tuple_count(g, bound);
  for (std::int64_t i = 0; i < n; ++i) f(D.tuple_at(i, g));
}

}  // namespace siegel::lattice

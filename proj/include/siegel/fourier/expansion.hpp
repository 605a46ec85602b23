#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegel/core/intmath.hpp"
#include "siegel/cyclotomic/cycnumber.hpp"
#include "siegel/lattice/discriminant.hpp"
#include "siegel/lattice/lattice.hpp"

namespace siegel::fourier {

using lattice::DiscPtr;
using lattice::DiscTuple;
using cplx = std::complex<double>;

/// Symmetric with integral diagonal and off-diagonal entries in (1/2)Z.
inline bool is_half_integral(const RatMatrix& T) {
  if (!T.square() || !T.is_symmetric()) return false;
  for (std::size_t i = 0; i < T.rows(); ++i)
    for (std::size_t j = i; j < T.cols(); ++j)
      if (!is_integer(i == j ? T(i, j) : Rational(T(i, j) * 2))) return false;
  return true;
}

/// Weight parity 2k = sig mod 4 (k half-integral).
inline bool weight_parity_ok(const Rational& k, int sig) {
  Rational two_k = k * 2;
  if (!is_integer(two_k)) return false;
  return mod_floor(to_i64(two_k) - sig, 4) == 0;
}

template <class V>
struct CoeffTraits;

template <>
struct CoeffTraits<cyclotomic::CycNumber> {
  static constexpr const char* backend = "exact";
  static cyclotomic::CycNumber zero() { return cyclotomic::CycNumber(); }
  static bool is_zero(const cyclotomic::CycNumber& v, double) { return v.is_zero(); }
  static double abs(const cyclotomic::CycNumber& v) { return std::abs(v.to_complex()); }
  static bool close(const cyclotomic::CycNumber& a, const cyclotomic::CycNumber& b, double) { return a == b; }
  /// v * e(x)
  static cyclotomic::CycNumber rotate(const cyclotomic::CycNumber& v, const Rational& x) {
    Rational y = frac(x);
    if (y == 0) return v;
    return v * cyclotomic::e_of(y, to_i64(mpz_class(y.get_den())));
  }
};

template <>
struct CoeffTraits<cplx> {
  static constexpr const char* backend = "numeric";
  static cplx zero() { return 0.0; }
  static bool is_zero(const cplx& v, double tol) { return std::abs(v) <= tol; }
  static double abs(const cplx& v) { return std::abs(v); }
  static bool close(const cplx& a, const cplx& b, double tol) { return std::abs(a - b) <= tol; }
  static cplx rotate(const cplx& v, const Rational& x) { return v * std::polar(1.0, 2 * M_PI * frac(x).get_d()); }
};

struct Key {
  DiscTuple alpha;
  RatMatrix T;
  bool operator<(const Key& o) const {
    if (alpha != o.alpha) return alpha < o.alpha;
    return T < o.T;
  }
  bool operator==(const Key& o) const { return alpha == o.alpha && T == o.T; }
};

/// Fourier coefficients c_T(f_alpha) for T >= 0 with tr T <= cutoff. Absent keys are zero.
template <class V>
class TruncatedExpansion {
 public:
  TruncatedExpansion(DiscPtr D, int genus, Rational weight, Rational cutoff)
      : D_(std::move(D)), g_(genus), k_(std::move(weight)), cutoff_(std::move(cutoff)) {
    if (genus < 0) throw Error(Errc::DimensionMismatch, "genus must be nonnegative");
    if (!weight_parity_ok(k_, D_->signature()))
      throw Error(Errc::ParityMismatch, "weight " + k_.get_str() + " violates 2k = sig mod 4");
  }

  const DiscPtr& disc() const { return D_; }
  int genus() const { return g_; }
  const Rational& weight() const { return k_; }
  const Rational& cutoff() const { return cutoff_; }
  const char* backend() const { return CoeffTraits<V>::backend; }
  const std::map<Key, V>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }

  /// Whether (alpha, T) is an admissible index inside the cutoff.
  bool admissible(const DiscTuple& alpha, const RatMatrix& T) const {
    if (alpha.size() != static_cast<std::size_t>(g_) || T.rows() != alpha.size()) return false;
    if (!D_->congruent(T, alpha)) return false;
    if (g_ > 0 && trace(T) > cutoff_) return false;
    return lattice::is_positive_semidefinite(T);
  }

  void set(const DiscTuple& alpha, const RatMatrix& T, const V& v) {
    if (!admissible(alpha, T)) throw Error(Errc::InvalidKey, "index is not T >= 0 in q(alpha) + half-integral within the cutoff");
    if (CoeffTraits<V>::is_zero(v, 0.0))
      table_.erase(Key{alpha, T});
    else
      table_[Key{alpha, T}] = v;
  }
  void add(const DiscTuple& alpha, const RatMatrix& T, const V& v) { set(alpha, T, get(alpha, T) + v); }

  V get(const DiscTuple& alpha, const RatMatrix& T) const {
    auto it = table_.find(Key{alpha, T});
    return it == table_.end() ? CoeffTraits<V>::zero() : it->second;
  }

  TruncatedExpansion operator+(const TruncatedExpansion& o) const {
    if (o.g_ != g_ || o.D_->order() != D_->order()) throw Error(Errc::DimensionMismatch, "expansions live on different spaces");
    TruncatedExpansion r(D_, g_, k_, std::min(cutoff_, o.cutoff_));
    for (const auto* src : {this, &o})
      for (const auto& [key, v] : src->table_)
        if (g_ == 0 || trace(key.T) <= r.cutoff_) r.add(key.alpha, key.T, v);
    return r;
  }

 private:
  DiscPtr D_;
  int g_;
  Rational k_, cutoff_;
  std::map<Key, V> table_;
};

/// Siegel operator Phi_beta: genus g -> genus g - |beta|. Zero unless q(beta) = 0 in the moment sense.
template <class V>
TruncatedExpansion<V> siegel_phi(const TruncatedExpansion<V>& f, const DiscTuple& beta) {
  const int g = f.genus(), s = static_cast<int>(beta.size()), r = g - s;
  if (r < 0) throw Error(Errc::DimensionMismatch, "beta longer than the genus");
  for (int x : beta)
    if (x < 0 || x >= f.disc()->order()) throw Error(Errc::InvalidKey, "beta entry outside D_L");
  TruncatedExpansion<V> out(f.disc(), r, f.weight(), f.cutoff());
  if (!f.disc()->moment_class(beta).is_zero()) return out;
  for (const auto& [key, v] : f.table()) {
    if (!std::equal(beta.begin(), beta.end(), key.alpha.begin() + r)) continue;
    bool degenerate = true;
    for (int i = r; i < g && degenerate; ++i)
      for (int j = 0; j < g; ++j)
        if (key.T(i, j) != 0) {
          degenerate = false;
          break;
        }
    if (!degenerate) continue;
    out.set(DiscTuple(key.alpha.begin(), key.alpha.begin() + r), key.T.block(0, 0, r, r), v);
  }
  return out;
}

inline RatMatrix congruence(const RatMatrix& T, const IntMatrix& A) {
  RatMatrix a = to_rational(A);
  return a.transpose() * T * a;
}

inline cplx to_c(const cplx& v) { return v; }
inline cplx to_c(const cyclotomic::CycNumber& v) { return v.to_complex(); }

struct SymmetryViolation {
  std::string form;  // "vector" or "component"
  DiscTuple alpha;
  RatMatrix T;
  cplx lhs, rhs;
};

/// Checks c_T(f) = phi^{2k} rho(R_A-type) c_{A^t T A}(f) and c_T(f_a) = c_{A^t T A}(f_{aA}).
/// Partners beyond the cutoff are skipped.
template <class V>
std::vector<SymmetryViolation> check_coeff_symmetry(const TruncatedExpansion<V>& f, const IntMatrix& A, double tol = 1e-9) {
  using Tr = CoeffTraits<V>;
  if (A.rows() != static_cast<std::size_t>(f.genus()) || !is_unimodular(A))
    throw Error(Errc::NotUnimodular, "A must lie in GL(g,Z)");
  const auto& D = *f.disc();
  // phi^{2k} chi(A) with phi = i when det A = -1: e(k/2 - sig/4)
  const Rational twist = det(A) == 1 ? Rational(0) : f.weight() / 2 - rat(D.signature(), 4);
  const IntMatrix Ainv = inverse_unimodular(A);

  std::vector<SymmetryViolation> out;
  std::map<Key, bool> seen;
  auto visit = [&](const DiscTuple& alpha, const RatMatrix& T) {
    if (!seen.emplace(Key{alpha, T}, true).second) return;
    RatMatrix T2 = congruence(T, A);
    if (f.genus() > 0 && (trace(T) > f.cutoff() || trace(T2) > f.cutoff())) return;
    const DiscTuple a2 = D.act(alpha, A);
    const V lhs = f.get(alpha, T), comp = f.get(a2, T2);
    if (!Tr::close(lhs, comp, tol)) out.push_back({"component", alpha, T, to_c(lhs), to_c(comp)});
    const V vec = Tr::rotate(comp, twist);
    if (!Tr::close(lhs, vec, tol)) out.push_back({"vector", alpha, T, to_c(lhs), to_c(vec)});
  };
  for (const auto& [key, v] : f.table()) {
    visit(key.alpha, key.T);
    // preimage of this key, so that missing left-hand coefficients are also compared
    visit(D.act(key.alpha, Ainv), congruence(key.T, Ainv));
  }
  return out;
}

struct CuspReport {
  bool cusp = true;
  std::optional<Key> witness;  // first singular index with a nonzero coefficient
  explicit operator bool() const { return cusp; }
};

/// All coefficients at singular T vanish (|c| <= tol). Singularity is decided exactly.
template <class V>
CuspReport is_cusp(const TruncatedExpansion<V>& f, double tol = 0.0) {
  CuspReport r;
  for (const auto& [key, v] : f.table()) {
    if (rank(key.T) == key.T.rows()) continue;
    if (!CoeffTraits<V>::is_zero(v, tol)) {
      r.cusp = false;
      r.witness = key;
      return r;
    }
  }
  return r;
}

struct Reduced {
  RatMatrix T;
  IntMatrix A;  // A^t T_in A = T
};

/// GL_g(Z)-reduction for g <= 2: g = 2 yields 0 <= 2 T12 <= T11 <= T22.
/// A is the transform built by the Gauss algorithm; reduced input gives A = I.
inline Reduced gl_reduce(const RatMatrix& T) {
  const std::size_t g = T.rows();
  if (g > 2) throw Error(Errc::GenusUnsupported, "gl_reduce handles genus <= 2");
  if (!T.is_symmetric()) throw Error(Errc::NotSymmetric, "T must be symmetric");
  if (!lattice::is_positive_semidefinite(T)) throw Error(Errc::InvalidKey, "T must be positive semidefinite");
  if (g < 2) return {T, IntMatrix::identity(g)};
  Rational a = T(0, 0), b = T(0, 1), c = T(1, 1);
  IntMatrix A = IntMatrix::identity(2);
  auto apply = [&](const IntMatrix& M) {
    A = A * M;
    RatMatrix cur{{a, b}, {b, c}};
    RatMatrix nxt = congruence(cur, M);
    a = nxt(0, 0), b = nxt(0, 1), c = nxt(1, 1);
  };
  for (;;) {
    if (a > c) apply(IntMatrix{{0, 1}, {1, 0}});
    if (a == 0) break;  // PSD forces b = 0
    if (abs(b * 2) <= a) break;
    Rational n(floor_of(b / a + rat(1, 2)));
    apply(IntMatrix{{1, -to_i64(n)}, {0, 1}});
  }
  if (b < 0) apply(IntMatrix{{1, 0}, {0, -1}});
  return {RatMatrix{{a, b}, {b, c}}, A};
}

}  // namespace siegel::fourier

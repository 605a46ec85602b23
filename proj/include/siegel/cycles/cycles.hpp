#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "siegel/core/intmath.hpp"
#include "siegel/fourier/expansion.hpp"
#include "siegel/lattice/discriminant.hpp"

namespace siegel::cycles {

using lattice::DiscriminantGroup;
using lattice::DiscTuple;

enum class Kind { Ordinary, Primitive };

inline std::string kind_name(Kind k) { return k == Kind::Ordinary ? "ordinary" : "primitive"; }

/// Z(T, alpha) or Z_prim(T, alpha).
struct CycleSymbol {
  Kind kind;
  RatMatrix T;
  DiscTuple alpha;
  bool canonical = false;

  bool operator<(const CycleSymbol& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (T != o.T) return T < o.T;
    return alpha < o.alpha;
  }
  bool operator==(const CycleSymbol& o) const { return kind == o.kind && T == o.T && alpha == o.alpha; }
};

inline void validate(const DiscriminantGroup& D, const CycleSymbol& s) {
  if (s.T.rows() != s.alpha.size() || s.T.rows() > 2) throw Error(Errc::GenusUnsupported, "cycle symbols are implemented for g <= 2");
  if (!D.congruent(s.T, s.alpha)) throw Error(Errc::InvalidKey, "T is not in q(alpha) + half-integral matrices");
  if (!lattice::is_positive_semidefinite(s.T)) throw Error(Errc::InvalidKey, "T must be positive semidefinite");
}

namespace detail {

inline CycleSymbol transported(const DiscriminantGroup& D, const CycleSymbol& s, const IntMatrix& M) {
  return {s.kind, fourier::congruence(s.T, M), D.act(s.alpha, M), false};
}

inline std::vector<IntMatrix> signed_permutations(std::size_t g) {
  std::vector<IntMatrix> out;
  std::vector<std::size_t> perm(g);
  for (std::size_t i = 0; i < g; ++i) perm[i] = i;
  do {
    for (unsigned signs = 0; signs < (1u << g); ++signs) {
      IntMatrix P(g, g);
      for (std::size_t i = 0; i < g; ++i) P(i, perm[i]) = (signs >> i) & 1 ? -1 : 1;
      out.push_back(P);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline const std::vector<IntMatrix>& small_gl2() {
  static const std::vector<IntMatrix> all = [] {
    std::vector<IntMatrix> out;
    for (std::int64_t a = -2; a <= 2; ++a)
      for (std::int64_t b = -2; b <= 2; ++b)
        for (std::int64_t c = -2; c <= 2; ++c)
          for (std::int64_t d = -2; d <= 2; ++d)
            if (std::llabs(a * d - b * c) == 1) out.push_back(IntMatrix{{a, b}, {c, d}});
    return out;
  }();
  return all;
}

// Small elements of GL_g(Z) fixing T; they generate the stabilizer's action on D^g for reduced T, g <= 2.
inline std::vector<IntMatrix> small_stabilizer(const RatMatrix& T) {
  if (T.rows() == 1) return {IntMatrix{{1}}, IntMatrix{{-1}}};
  std::vector<IntMatrix> out;
  const Rational &t0 = T(0, 0), &t1 = T(0, 1), &t2 = T(1, 1);
  for (const auto& M : small_gl2()) {
    const long a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
    // (M^t T M)_{00}, _{01}, _{11}
    if (t0 * (a * a) + t1 * (2 * a * c) + t2 * (c * c) != t0) continue;
    if (t0 * (a * b) + t1 * (a * d + b * c) + t2 * (c * d) != t1) continue;
    if (t0 * (b * b) + t1 * (2 * b * d) + t2 * (d * d) != t2) continue;
    out.push_back(M);
  }
  return out;
}

// Smallest tuple in the orbit of alpha under the group generated by gens.
inline DiscTuple min_orbit(const DiscriminantGroup& D, const DiscTuple& alpha, const std::vector<IntMatrix>& gens) {
  std::set<DiscTuple> seen{alpha};
  std::vector<DiscTuple> todo{alpha};
  while (!todo.empty()) {
    DiscTuple a = todo.back();
    todo.pop_back();
    for (const auto& M : gens) {
      DiscTuple b = D.act(a, M);
      if (seen.insert(b).second) todo.push_back(b);
    }
  }
  return *seen.begin();
}

}  // namespace detail

/// Ordinary symbols modulo Z(T, alpha) = Z(M^t T M, alpha M) for M in GL_g(Z): gl_reduce on T, then the
/// smallest alpha over the stabilizer orbit. Entrywise primitivity is only stable under signed
/// permutations, so primitive symbols are reduced modulo that subgroup alone.
inline CycleSymbol canonicalize(const DiscriminantGroup& D, const CycleSymbol& s) {
  validate(D, s);
  const std::size_t g = s.T.rows();
  CycleSymbol best;
  if (s.kind == Kind::Ordinary) {
    auto red = fourier::gl_reduce(s.T);
    best = {s.kind, red.T, D.act(s.alpha, red.A), true};
    best.alpha = detail::min_orbit(D, best.alpha, detail::small_stabilizer(best.T));
    return best;
  }
  bool first = true;
  for (const auto& P : detail::signed_permutations(g)) {
    auto c = detail::transported(D, s, P);
    if (first || c < best) best = c;
    first = false;
  }
  best.canonical = true;
  return best;
}

/// Integer combination of canonical symbols; zero coefficients are never stored.
class FormalCycleSum {
 public:
  void add(const CycleSymbol& s, std::int64_t c) {
    if (c == 0) return;
    auto& v = terms_[s];
    v += c;
    if (v == 0) terms_.erase(s);
  }
  void add(const FormalCycleSum& o, std::int64_t scale = 1) {
    for (const auto& [s, c] : o.terms_) add(s, c * scale);
  }
  FormalCycleSum operator+(const FormalCycleSum& o) const {
    FormalCycleSum r = *this;
    r.add(o);
    return r;
  }
  bool operator==(const FormalCycleSum& o) const { return terms_ == o.terms_; }
  const std::map<CycleSymbol, std::int64_t>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::int64_t coeff(const CycleSymbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? 0 : it->second;
  }

 private:
  std::map<CycleSymbol, std::int64_t> terms_;
};

struct Divisor {
  std::vector<std::int64_t> R;  // diagonal entries
  std::vector<DiscTuple> betas;
  RatMatrix reduced;            // R^{-1} T R^{-1}
};

/// All diagonal R with R | T, and for each the beta with beta R = alpha and R^{-1} T R^{-1} in q(beta) + Lambda_g.
/// R_ii^2 <= N T_ii, since a nonzero diagonal entry of any shift class is at least 1/N;
/// R_ii = 1 whenever T_ii = 0.
inline std::vector<Divisor> divisors_of(const DiscriminantGroup& D, const RatMatrix& T, const DiscTuple& alpha) {
  validate(D, {Kind::Ordinary, T, alpha});
  const std::size_t g = T.rows();
  const std::int64_t N = D.level();
  std::vector<std::int64_t> bound(g);
  for (std::size_t i = 0; i < g; ++i) {
    if (T(i, i) == 0) {
      bound[i] = 1;
      continue;
    }
    const Rational b = T(i, i) * N;
    std::int64_t r = 1;
    while (Rational((r + 1) * (r + 1)) <= b) ++r;
    bound[i] = r;
  }
  // beta_i candidates per entry and R_ii value
  std::vector<Divisor> out;
  std::vector<std::int64_t> R(g, 1);
  for (;;) {
    RatMatrix Tr(g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) Tr(i, j) = T(i, j) / Rational(R[i] * R[j]);
    std::vector<std::vector<int>> cands(g);
    for (std::size_t i = 0; i < g; ++i)
      for (int x = 0; x < D.order(); ++x)
        if (D.mul(R[i], x) == alpha[i]) cands[i].push_back(x);
    Divisor dv{R, {}, Tr};
    DiscTuple beta(g);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == g) {
        if (D.congruent(Tr, beta)) dv.betas.push_back(beta);
        return;
      }
      for (int x : cands[i]) {
        beta[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
    if (!dv.betas.empty()) out.push_back(std::move(dv));
    std::size_t i = 0;
    while (i < g && R[i] == bound[i]) R[i++] = 1;
    if (i == g) break;
    ++R[i];
  }
  return out;
}

/// Z(T, alpha) = sum_{R | T} sum_{beta R = alpha} Z_prim(R^{-1} T R^{-1}, beta).
inline FormalCycleSum expand_ordinary(const DiscriminantGroup& D, const CycleSymbol& s, bool canonical = true) {
  if (s.kind != Kind::Ordinary) throw Error(Errc::InvalidKey, "expand_ordinary needs an ordinary symbol");
  FormalCycleSum out;
  for (const auto& dv : divisors_of(D, s.T, s.alpha))
    for (const auto& b : dv.betas) {
      CycleSymbol p{Kind::Primitive, dv.reduced, b, false};
      out.add(canonical ? canonicalize(D, p) : p, 1);
    }
  return out;
}

/// Z_prim(T, alpha) = sum_{R | T} mu(R) sum_{beta R = alpha} Z(R^{-1} T R^{-1}, beta).
inline FormalCycleSum expand_primitive(const DiscriminantGroup& D, const CycleSymbol& s, bool canonical = true) {
  if (s.kind != Kind::Primitive) throw Error(Errc::InvalidKey, "expand_primitive needs a primitive symbol");
  FormalCycleSum out;
  for (const auto& dv : divisors_of(D, s.T, s.alpha)) {
    std::int64_t mu = 1;
    for (auto r : dv.R) mu *= moebius(r);
    if (mu == 0) continue;
    for (const auto& b : dv.betas) {
      CycleSymbol o{Kind::Ordinary, dv.reduced, b, false};
      out.add(canonical ? canonicalize(D, o) : o, mu);
    }
  }
  return out;
}

/// Every (T, alpha) with alpha in D^g, T >= 0 in q(alpha) + Lambda_g and tr T <= bound.
inline std::vector<CycleSymbol> admissible_symbols(const DiscriminantGroup& D, int g, const Rational& trace_bound, Kind kind) {
  if (g < 1 || g > 2) throw Error(Errc::GenusUnsupported, "cycle symbols are implemented for g <= 2");
  std::vector<CycleSymbol> out;
  lattice::enumerate_tuples(D, g, [&](const DiscTuple& a) {
    auto m = D.moment_class(a);
    if (g == 1) {
      for (Rational t = m(0, 0); t <= trace_bound; t += 1) out.push_back({kind, RatMatrix{{t}}, a, false});
      return;
    }
    for (Rational t1 = m(0, 0); t1 <= trace_bound; t1 += 1)
      for (Rational t2 = m(1, 1); t1 + t2 <= trace_bound; t2 += 1) {
        // |t12| <= sqrt(t1 t2), t12 in m12 + (1/2)Z
        const Rational prod = t1 * t2;
        Rational t12 = m(0, 1);
        while (t12 * t12 <= prod) t12 -= rat(1, 2);
        for (t12 += rat(1, 2); t12 * t12 <= prod; t12 += rat(1, 2)) out.push_back({kind, RatMatrix{{t1, t12}, {t12, t2}}, a, false});
      }
  });
  return out;
}

struct InversionFailure {
  CycleSymbol symbol;
  FormalCycleSum result;
};

struct InversionReport {
  std::size_t checked = 0, checked_reverse = 0;
  std::vector<InversionFailure> failures, reverse_failures;
  bool pass() const { return failures.empty() && reverse_failures.empty(); }
};

/// Forward: expand_primitive after expand_ordinary, with canonical symbols, returns the symbol.
/// Reverse: expand_ordinary after expand_primitive, on raw symbols (the diagonal divisor
/// structure is only equivariant for signed permutations, so this direction stays uncanonicalized).
inline InversionReport verify_inversion(const DiscriminantGroup& D, int g, const Rational& trace_bound) {
  InversionReport rep;
  std::map<CycleSymbol, FormalCycleSum> prim_memo;
  auto prim_of = [&](const CycleSymbol& p) -> const FormalCycleSum& {
    auto it = prim_memo.find(p);
    if (it == prim_memo.end()) it = prim_memo.emplace(p, expand_primitive(D, p)).first;
    return it->second;
  };
  for (const auto& s : admissible_symbols(D, g, trace_bound, Kind::Ordinary)) {
    ++rep.checked;
    FormalCycleSum back;
    const auto ord = expand_ordinary(D, s);
    for (const auto& [p, c] : ord.terms()) back.add(prim_of(p), c);
    FormalCycleSum want;
    want.add(canonicalize(D, s), 1);
    if (!(back == want)) rep.failures.push_back({s, back});

    ++rep.checked_reverse;
    CycleSymbol p{Kind::Primitive, s.T, s.alpha, false};
    FormalCycleSum fwd;
    const auto prim = expand_primitive(D, p, false);
    for (const auto& [o, c] : prim.terms()) fwd.add(expand_ordinary(D, o, false), c);
    FormalCycleSum wantp;
    wantp.add(p, 1);
    if (!(fwd == wantp)) rep.reverse_failures.push_back({p, fwd});
  }
  return rep;
}

}  // namespace siegel::cycles

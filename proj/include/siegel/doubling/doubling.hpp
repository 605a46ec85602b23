#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "siegel/core/intmath.hpp"
#include "siegel/fourier/expansion.hpp"

namespace siegel::doubling {

/// A coprime symmetric pair: C D^t symmetric and the g x 2g block (C|D) primitive.
struct SymPair {
  IntMatrix C, D;
  bool operator<(const SymPair& o) const { return C != o.C ? C < o.C : D < o.D; }
  bool operator==(const SymPair& o) const { return C == o.C && D == o.D; }
};

/// gcd of the maximal minors of a matrix with at least as many columns as rows.
inline std::int64_t minor_gcd(const IntMatrix& X) { return maximal_minor_gcd(X); }

inline bool is_primitive(const IntMatrix& W) {
  if (W.rows() == 0 || W.cols() == 0) return true;
  return W.rows() <= W.cols() ? minor_gcd(W) == 1 : minor_gcd(W.transpose()) == 1;
}

inline bool is_sym_pair(const IntMatrix& C, const IntMatrix& D) {
  if (C.rows() != C.cols() || D.rows() != C.rows() || D.cols() != C.cols()) return false;
  return (C * D.transpose()).is_symmetric() && minor_gcd(hstack(C, D)) == 1;
}

inline int stratum(const SymPair& p) { return static_cast<int>(rank(p.C)); }

inline std::int64_t height(const SymPair& p) { return std::max(max_abs(p.C), max_abs(p.D)); }

inline std::int64_t max_enumeration_height(int g) { return g == 1 ? 10000 : 6; }

namespace detail {
// gcd of the six 2x2 minors of a 2x4 block; integer-only fast path for the g = 2 enumeration
inline std::int64_t minors_gcd_2x4(const std::int64_t r[2][4]) {
  std::int64_t gg = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) gg = std::gcd(gg, r[0][i] * r[1][j] - r[0][j] * r[1][i]);
  return gg;
}
}  // namespace detail

/// Every pair with max |entry| <= H, each exactly once.
inline void enumerate_ST(int g, std::int64_t H, const std::function<void(const SymPair&)>& emit) {
  if (g < 1 || g > 2) throw Error(Errc::GenusUnsupported, "enumeration implemented for g <= 2");
  if (H < 0 || H > max_enumeration_height(g))
    throw Error(Errc::BoundExceeded, "height " + std::to_string(H) + " outside the enumeration window");
  if (g == 1) {
    for (std::int64_t c = -H; c <= H; ++c)
      for (std::int64_t d = -H; d <= H; ++d)
        if (std::gcd(c, d) == 1) emit({IntMatrix{{c}}, IntMatrix{{d}}});
    return;
  }
  // rows c1 = C[0], c2 = C[1], d1 = D[0], d2 = D[1]; C D^t symmetric <=> c1.d2 = c2.d1
  std::int64_t r[2][4];
  auto visit = [&] {
    if (detail::minors_gcd_2x4(r) != 1) return;
    emit({IntMatrix{{r[0][0], r[0][1]}, {r[1][0], r[1][1]}}, IntMatrix{{r[0][2], r[0][3]}, {r[1][2], r[1][3]}}});
  };
  for (r[0][0] = -H; r[0][0] <= H; ++r[0][0])
    for (r[0][1] = -H; r[0][1] <= H; ++r[0][1])
      for (r[1][0] = -H; r[1][0] <= H; ++r[1][0])
        for (r[1][1] = -H; r[1][1] <= H; ++r[1][1])
          for (r[0][2] = -H; r[0][2] <= H; ++r[0][2])
            for (r[0][3] = -H; r[0][3] <= H; ++r[0][3]) {
              const std::int64_t rhs = r[1][0] * r[0][2] + r[1][1] * r[0][3];  // c2.d1
              const std::int64_t a = r[0][0], b = r[0][1];                     // a*D10 + b*D11 = rhs
              if (a != 0) {
                for (r[1][3] = -H; r[1][3] <= H; ++r[1][3]) {
                  const std::int64_t num = rhs - b * r[1][3];
                  if (num % a != 0) continue;
                  r[1][2] = num / a;
                  if (std::llabs(r[1][2]) <= H) visit();
                }
              } else if (b != 0) {
                if (rhs % b != 0) continue;
                r[1][3] = rhs / b;
                if (std::llabs(r[1][3]) > H) continue;
                for (r[1][2] = -H; r[1][2] <= H; ++r[1][2]) visit();
              } else if (rhs == 0) {
                for (r[1][2] = -H; r[1][2] <= H; ++r[1][2])
                  for (r[1][3] = -H; r[1][3] <= H; ++r[1][3]) visit();
              }
            }
}

inline std::vector<SymPair> enumerate_ST(int g, std::int64_t H) {
  std::vector<SymPair> out;
  enumerate_ST(g, H, [&](const SymPair& p) { out.push_back(p); });
  return out;
}

/// Row Hermite form of (C|D): the representative of the left GL_g(Z)-orbit.
inline SymPair gl_canonical(const SymPair& p) {
  const std::size_t g = p.C.rows();
  auto h = row_hermite(hstack(p.C, p.D)).H;
  return {h.block(0, 0, g, g), h.block(0, g, g, g)};
}

inline SymPair left_act(const IntMatrix& U, const SymPair& p) { return {U * p.C, U * p.D}; }

/// Completes a primitive r x g matrix X to V in GL_g(Z) whose first r rows are X.
inline IntMatrix complete_rows(const IntMatrix& X) {
  const std::size_t r = X.rows(), g = X.cols();
  if (!is_primitive(X) || r > g) throw Error(Errc::NotUnimodular, "rows are not primitive");
  auto f = smith_form(X);  // U X V = (I | 0)
  IntMatrix Vi = inverse_unimodular(f.V);
  IntMatrix big = IntMatrix::identity(g);
  IntMatrix Ui = inverse_unimodular(f.U);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) big(i, j) = Ui(i, j);
  return big * Vi;
}

/// V in GL_g(Z) with upper-left r x r block W, if one exists: W = P^{-1} S Q^{-1} in Smith form,
/// and (W | X) is primitive once the non-unit invariant factors each get a unit in X.
inline std::optional<IntMatrix> mstar_completion(const IntMatrix& W, std::size_t g) {
  const std::size_t r = W.rows();
  if (W.cols() != r || r > g) throw Error(Errc::DimensionMismatch, "W must be square of size <= g");
  if (det(W) == 0) return std::nullopt;
  auto f = smith_form(W);
  std::size_t nonunit = 0;
  for (auto d : f.invariants()) nonunit += (d != 1);
  if (nonunit > g - r) return std::nullopt;
  IntMatrix Y(r, g - r);
  for (std::size_t j = 0; j < nonunit; ++j) Y(r - 1 - j, j) = 1;  // invariants are sorted, non-units last
  IntMatrix X = inverse_unimodular(f.U) * Y;
  IntMatrix V = complete_rows(hstack(W, X));
  if (V.block(0, 0, r, r) != W || !is_unimodular(V)) throw Error(Errc::NotUnimodular, "completion failed");
  return V;
}

inline bool is_Mstar(const IntMatrix& W, std::size_t g) { return mstar_completion(W, g).has_value(); }

struct StratumCounts {
  std::map<int, std::int64_t> count;
  std::int64_t total = 0;
};

inline StratumCounts stratify(int g, std::int64_t H) {
  StratumCounts s;
  enumerate_ST(g, H, [&](const SymPair& p) {
    ++s.count[stratum(p)];
    ++s.total;
  });
  return s;
}

/// Representatives of GL_g \ ST(g, nu): (diag(C1, 0) W^t, diag(D1, I) W^{-1}) with (C1, D1) over
/// GL_nu \ ST(nu, nu) and W over GL_g / GL_{g,nu}, the latter being block upper triangular.
struct SetofrepReport {
  int g, nu;
  std::int64_t H, induced_bound;
  std::size_t candidates = 0, enumerated = 0;
  std::vector<SymPair> invalid, duplicates, uncovered;
  bool pass() const { return invalid.empty() && duplicates.empty() && uncovered.empty(); }
};

namespace detail {
// W with W^{-t} e_2 = v for a primitive v: W^{-t} = (u | v), det 1, u from the extended gcd
inline IntMatrix w_for_kernel(std::int64_t v1, std::int64_t v2) {
  auto [gg, x, y] = ext_gcd(v1, v2);  // x v1 + y v2 = 1
  (void)gg;
  IntMatrix M{{y, v1}, {-x, v2}};     // det = y v2 + x v1 = 1
  return inverse_unimodular(M).transpose();
}
}  // namespace detail

inline std::vector<SymPair> setofrep_candidates(int g, int nu, std::int64_t H) {
  if (g != 2 || nu < 0 || nu > 2) throw Error(Errc::GenusUnsupported, "representative check implemented for g = 2");
  std::vector<SymPair> out;
  if (nu == 0) return {{IntMatrix(2, 2), IntMatrix::identity(2)}};
  if (nu == 2) {
    std::set<SymPair> seen;
    enumerate_ST(2, H, [&](const SymPair& p) {
      if (det(p.C) != 0 && seen.insert(gl_canonical(p)).second) out.push_back(gl_canonical(p));
    });
    return out;
  }
  // nu = 1: (c, d) with c > 0 modulo GL_1 = {+-1}; W over primitive kernel vectors v modulo +-1
  for (std::int64_t v1 = 0; v1 <= H; ++v1)
    for (std::int64_t v2 = -H; v2 <= H; ++v2) {
      if (std::gcd(v1, v2) != 1 || (v1 == 0 && v2 < 0)) continue;
      const IntMatrix W = detail::w_for_kernel(v1, v2), Wi = inverse_unimodular(W);
      for (std::int64_t c = 1; c <= H; ++c)
        for (std::int64_t d = -H; d <= H; ++d) {
          if (std::gcd(c, d) != 1) continue;
          out.push_back({IntMatrix{{c, 0}, {0, 0}} * W.transpose(), IntMatrix{{d, 0}, {0, 1}} * Wi});
        }
    }
  return out;
}

/// (a) candidates lie in ST(g, nu); (b) no two share a canonical form; (c) every enumerated
/// ST(g, nu) pair of height <= floor(sqrt(H/2)) is associated to a candidate.
inline SetofrepReport setofrep_check(int g, int nu, std::int64_t H) {
  SetofrepReport rep{g, nu, H, static_cast<std::int64_t>(std::sqrt(double(H) / 2.0 + 1e-12)), 0, 0, {}, {}, {}};
  auto cand = setofrep_candidates(g, nu, H);
  rep.candidates = cand.size();
  std::set<SymPair> canon;
  for (const auto& p : cand) {
    if (!is_sym_pair(p.C, p.D) || stratum(p) != nu) rep.invalid.push_back(p);
    if (!canon.insert(gl_canonical(p)).second) rep.duplicates.push_back(p);
  }
  enumerate_ST(g, rep.induced_bound, [&](const SymPair& p) {
    if (stratum(p) != nu) return;
    ++rep.enumerated;
    if (!canon.count(gl_canonical(p))) rep.uncovered.push_back(p);
  });
  return rep;
}

/// Coefficients with positive definite upper-left r x r block (essential part) and the rest.
template <class V>
std::pair<fourier::TruncatedExpansion<V>, fourier::TruncatedExpansion<V>> essential_split(const fourier::TruncatedExpansion<V>& f,
                                                                                          int r = 1) {
  if (f.genus() != 2 || r != 1) throw Error(Errc::GenusUnsupported, "essential part implemented for g = 2, r = 1");
  fourier::TruncatedExpansion<V> ess(f.disc(), 2, f.weight(), f.cutoff()), rest = ess;
  for (const auto& [key, v] : f.table()) (key.T(0, 0) > 0 ? ess : rest).set(key.alpha, key.T, v);
  return {ess, rest};
}

template <class V>
fourier::TruncatedExpansion<V> essential_part(const fourier::TruncatedExpansion<V>& f, int r = 1) {
  return essential_split(f, r).first;
}

template <class V>
fourier::TruncatedExpansion<V> essential_complement(const fourier::TruncatedExpansion<V>& f, int r = 1) {
  return essential_split(f, r).second;
}

}  // namespace siegel::doubling

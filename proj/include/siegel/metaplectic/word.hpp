#pragma once

#include <optional>
#include <random>
#include <vector>

#include "siegel/metaplectic/mp_element.hpp"

namespace siegel::metaplectic {

/// One generator: S, T_B (B symmetric) or R_A (A unimodular), each with branch 0.
struct Letter {
  enum class Kind { S, T, R };
  Kind kind = Kind::S;
  IntMatrix mat;  // B for T, A for R, empty for S

  static Letter S() { return {Kind::S, {}}; }
  static Letter T(IntMatrix B) { return {Kind::T, std::move(B)}; }
  static Letter R(IntMatrix A) { return {Kind::R, std::move(A)}; }

  MpElement element(int g) const {
    switch (kind) {
      case Kind::S: return mp_S(g);
      case Kind::T: return mp_T(mat);
      case Kind::R: return mp_R(mat);
    }
    return mp_identity(g);
  }
  IntMatrix matrix(int g) const { return element(g).matrix(); }
  bool operator==(const Letter& o) const { return kind == o.kind && mat == o.mat; }
};

/// Product L_1 L_2 ... L_n times (I,-1)^branch_flip.
struct Word {
  int genus = 1;
  std::vector<Letter> letters;
  int branch_flip = 0;
  bool operator==(const Word& o) const { return genus == o.genus && letters == o.letters && branch_flip == o.branch_flip; }
};

inline MpElement evaluate(const Word& w) {
  MpElement r = mp_identity(w.genus);
  for (const auto& l : w.letters) r = compose(r, l.element(w.genus));
  if (w.branch_flip & 1) r = compose(r, mp_center(w.genus));
  return r;
}

namespace detail_word {

/// Right-multiply the bottom row (C,D) by a letter.
inline void apply_right(IntMatrix& C, IntMatrix& D, const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::S: {
      IntMatrix nc = D, nd = -C;
      C = std::move(nc);
      D = std::move(nd);
      break;
    }
    case Letter::Kind::T: D = D + C * l.mat; break;
    case Letter::Kind::R: {
      C = C * l.mat;
      D = D * inverse_unimodular(l.mat).transpose();
      break;
    }
  }
}

inline std::vector<IntMatrix> small_symmetric(std::size_t g) {
  // all symmetric matrices with entries in {-1,0,1}, ordered by number of nonzeros
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) slots.push_back({i, j});
  std::vector<IntMatrix> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < slots.size(); ++k) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    IntMatrix E(g, g);
    std::size_t c = code;
    for (auto [i, j] : slots) {
      std::int64_t v = static_cast<std::int64_t>(c % 3) - 1;
      c /= 3;
      E(i, j) = E(j, i) = v;
    }
    out.push_back(E);
  }
  std::stable_sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) {
    auto nz = [](const IntMatrix& m) { return std::count_if(m.data().begin(), m.data().end(), [](auto x) { return x != 0; }); };
    return nz(a) < nz(b);
  });
  return out;
}

inline std::int64_t round_rational(const Rational& x) { return to_i64(floor_of(x + rat(1, 2))); }

}  // namespace detail_word

/// Letters L_1..L_k with (C,D) L_1 ... L_k = (0, U). |det C| decreases strictly once C is invertible.
inline std::vector<Letter> reduce_bottom_row(IntMatrix C, IntMatrix D, int max_genus = 3) {
  using namespace detail_word;
  const std::size_t g = C.rows();
  if (static_cast<int>(g) > max_genus) throw Error(Errc::BoundExceeded, "decomposition is implemented for genus <= 3");
  std::vector<Letter> out;
  const auto candidates = small_symmetric(g);
  auto push = [&](const Letter& l) {
    apply_right(C, D, l);
    out.push_back(l);
  };
  for (int iter = 0; iter < 10000; ++iter) {
    if (C.is_zero()) return out;
    if (det(C) == 0) {
      // find small symmetric B with D + C B invertible, then swap
      bool found = false;
      for (const auto& B : candidates)
        if (det(D + C * B) != 0) {
          if (!B.is_zero()) push(Letter::T(B));
          push(Letter::S());
          found = true;
          break;
        }
      if (!found) throw Error(Errc::BoundExceeded, "no small shift makes the bottom row invertible");
      continue;
    }
    // C invertible: X = C^{-1} D is symmetric
    RatMatrix X = *inverse(to_rational(C)) * to_rational(D);
    IntMatrix B0(g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) B0(i, j) = -round_rational(X(i, j));
    std::optional<IntMatrix> best;
    Rational best_det;
    for (const auto& E : candidates) {
      IntMatrix B = B0 + E;
      RatMatrix Y = X + to_rational(B);
      if (Y.is_zero()) {
        best = B;
        best_det = 0;
        break;
      }
      Rational dY = abs(siegel::det(Y));
      if (dY == 0 || dY >= 1) continue;
      if (!best || dY < best_det) {
        best = B;
        best_det = dY;
      }
      if (E.is_zero()) break;
    }
    if (!best) throw Error(Errc::BoundExceeded, "no admissible reduction step");
    if (!best->is_zero()) push(Letter::T(*best));
    push(Letter::S());
  }
  throw Error(Errc::BoundExceeded, "bottom-row reduction did not terminate");
}

inline Letter inverse_letter_single(const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::T: return Letter::T(-l.mat);
    case Letter::Kind::R: return Letter::R(inverse_unimodular(l.mat));
    case Letter::Kind::S: break;
  }
  return Letter::S();
}

/// Appends letters whose product is L^{-1} up to the centre.
inline void push_inverse(std::vector<Letter>& w, const Letter& l) {
  if (l.kind == Letter::Kind::S) {
    w.push_back(Letter::S());
    w.push_back(Letter::S());
    w.push_back(Letter::S());
  } else {
    w.push_back(inverse_letter_single(l));
  }
}

inline void fix_branch(Word& w, const MpElement& target) {
  w.branch_flip = 0;
  MpElement got = evaluate(w);
  if (got.matrix() != target.matrix()) throw Error(Errc::PrecisionExhausted, "word does not reproduce the matrix");
  w.branch_flip = got.branch() != target.branch() ? 1 : 0;
}

/// Word in S, T_B, R_A (and the centre) representing gamma.
inline Word decompose(const MpElement& gamma) {
  const int g = gamma.genus();
  if (g > 3) throw Error(Errc::BoundExceeded, "decomposition is implemented for genus <= 3");
  if (!is_symplectic(gamma.matrix())) throw Error(Errc::NotUnimodular, "matrix is not symplectic");
  auto red = reduce_bottom_row(gamma.C(), gamma.D());
  IntMatrix P = gamma.matrix();
  for (const auto& l : red) P = P * l.matrix(g);
  const std::size_t ug = static_cast<std::size_t>(g);
  IntMatrix A = P.block(0, 0, ug, ug), B = P.block(0, ug, ug, ug);
  IntMatrix X = inverse_unimodular(A) * B;
  Word w;
  w.genus = g;
  if (A != IntMatrix::identity(ug)) w.letters.push_back(Letter::R(A));
  if (!X.is_zero()) w.letters.push_back(Letter::T(X));
  for (auto it = red.rbegin(); it != red.rend(); ++it) push_inverse(w.letters, *it);
  fix_branch(w, gamma);
  return w;
}

/// A word whose product has bottom row (C, D); (C, D) must be a coprime symmetric pair.
inline Word complete_bottom_row(const IntMatrix& C, const IntMatrix& D) {
  const std::size_t g = C.rows();
  auto red = reduce_bottom_row(C, D);
  IntMatrix c = C, d = D;
  for (const auto& l : red) detail_word::apply_right(c, d, l);
  // now (c, d) = (0, U); R_{U^{-t}} has bottom row (0, U)
  Word w;
  w.genus = static_cast<int>(g);
  IntMatrix Ut = inverse_unimodular(d).transpose();
  if (Ut != IntMatrix::identity(g)) w.letters.push_back(Letter::R(Ut));
  for (auto it = red.rbegin(); it != red.rend(); ++it) push_inverse(w.letters, *it);
  return w;
}

/// Random symmetric matrix with entries in [-bound, bound].
template <class Rng>
IntMatrix random_symmetric(std::size_t g, int bound, Rng& rng) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix B(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) B(i, j) = B(j, i) = dist(rng);
  return B;
}

/// Random element of GL(g,Z): a few elementary operations and a random sign.
template <class Rng>
IntMatrix random_unimodular(std::size_t g, Rng& rng) {
  IntMatrix A = IntMatrix::identity(g);
  std::uniform_int_distribution<int> coin(0, 1);
  if (g > 1) {
    std::uniform_int_distribution<std::size_t> idx(0, g - 1);
    std::uniform_int_distribution<int> mult(-1, 1);
    for (int k = 0; k < 3; ++k) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j) continue;
      int m = mult(rng);
      for (std::size_t c = 0; c < g; ++c) A(i, c) += m * A(j, c);
    }
  }
  if (coin(rng)) {
    std::uniform_int_distribution<std::size_t> idx(0, g - 1);
    std::size_t i = idx(rng);
    for (std::size_t c = 0; c < g; ++c) A(i, c) = -A(i, c);
  }
  return A;
}

template <class Rng>
Word random_word(int g, int max_len, Rng& rng) {
  std::uniform_int_distribution<int> len(1, max_len), kind(0, 2);
  Word w;
  w.genus = g;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0: w.letters.push_back(Letter::S()); break;
      case 1: w.letters.push_back(Letter::T(random_symmetric(static_cast<std::size_t>(g), 2, rng))); break;
      default: w.letters.push_back(Letter::R(random_unimodular(static_cast<std::size_t>(g), rng))); break;
    }
  }
  return w;
}

}  // namespace siegel::metaplectic

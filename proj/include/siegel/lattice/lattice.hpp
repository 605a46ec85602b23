#pragma once

#include <string>
#include <utility>

#include "siegel/core/intmath.hpp"

namespace siegel::lattice {

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
};

/// Sylvester inertia of a rational symmetric matrix by congruence diagonalisation.
inline Inertia inertia(RatMatrix a) {
  if (!a.is_symmetric()) throw Error(Errc::NotSymmetric, "inertia needs a symmetric matrix");
  const std::size_t n = a.rows();
  Inertia in;
  std::size_t done = 0;
  std::vector<bool> used(n, false);
  while (done < n) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish; use e_i + e_j to create a nonzero one
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!used[i] && !used[j] && i != j && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        for (std::size_t i = 0; i < n; ++i)
          if (!used[i]) ++in.zero;
        return in;
      }
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      p = pi;
    }
    const Rational piv = a(p, p);
    (piv > 0 ? in.positive : in.negative)++;
    used[p] = true;
    ++done;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] || a(i, p) == 0) continue;
      Rational f = a(i, p) / piv;
      for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(p, k);
      for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, p);
    }
  }
  return in;
}

inline bool is_positive_semidefinite(const RatMatrix& a) { return inertia(a).negative == 0; }
inline bool is_positive_definite(const RatMatrix& a) {
  auto in = inertia(a);
  return in.negative == 0 && in.zero == 0;
}

/// Nondegenerate even lattice given by its Gram matrix.
class EvenLattice {
 public:
  explicit EvenLattice(IntMatrix gram, std::string name = {}) : gram_(std::move(gram)), name_(std::move(name)) {
    if (!gram_.square()) throw Error(Errc::DimensionMismatch, "Gram matrix must be square");
    if (!gram_.is_symmetric()) throw Error(Errc::NotSymmetric, "Gram matrix is not symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      if (gram_(i, i) % 2 != 0) throw Error(Errc::NotEven, "diagonal entry " + std::to_string(gram_(i, i)) + " is odd");
    det_ = siegel::det(gram_);
    if (det_ == 0) throw Error(Errc::Degenerate, "Gram matrix is singular");
    auto in = inertia(to_rational(gram_));
    bp_ = in.positive;
    bm_ = in.negative;
  }

  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.rows(); }
  int b_plus() const { return bp_; }
  int b_minus() const { return bm_; }
  int signature() const { return bp_ - bm_; }
  std::int64_t determinant() const { return det_; }

 private:
  IntMatrix gram_;
  std::string name_;
  std::int64_t det_ = 0;
  int bp_ = 0, bm_ = 0;
};

inline EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b) {
  std::string n = a.name().empty() || b.name().empty() ? std::string() : a.name() + "+" + b.name();
  return EvenLattice(block_diag(a.gram(), b.gram()), n);
}

inline EvenLattice hyperbolic_plane() { return EvenLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

inline EvenLattice e8() {
  // Cartan matrix of E8
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const int edges[7][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}};
  for (auto& e : edges) g(e[0], e[1]) = g(e[1], e[0]) = -1;
  return EvenLattice(g, "E8");
}

inline EvenLattice diagonal_lattice(std::int64_t n) { return EvenLattice(IntMatrix{{n}}, "<" + std::to_string(n) + ">"); }

}  // namespace siegel::lattice

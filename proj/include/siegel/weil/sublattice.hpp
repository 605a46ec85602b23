#pragma once

#include <complex>
#include <vector>

#include "siegel/cyclotomic/cycmatrix.hpp"
#include "siegel/lattice/discriminant.hpp"

namespace siegel::weil {

inline cyclotomic::CycNumber conj_of(const cyclotomic::CycNumber& v) { return v.conj(); }
inline std::complex<double> conj_of(const std::complex<double>& v) { return std::conj(v); }

/// <v, w> = sum_alpha v_alpha conj(w_alpha) on C[D^g].
template <class V>
V inner_product(const std::vector<V>& v, const std::vector<V>& w) {
  if (v.size() != w.size()) throw Error(Errc::DimensionMismatch, "vectors of different length");
  V s = V(0);
  for (std::size_t i = 0; i < v.size(); ++i) s = s + v[i] * conj_of(w[i]);
  return s;
}

/// A finite-index sublattice M of L, given by basis rows in L-coordinates.
/// Elements of L'/M inside D_M project onto D_L; restriction and trace are the
/// induced maps C[D_L^g] -> C[D_M^g] and back.
class SublatticeMap {
 public:
  SublatticeMap(const lattice::EvenLattice& L, const IntMatrix& basis)
      : L_(L), basis_(basis), M_(basis * L.gram() * basis.transpose()), DL_(lattice::discriminant(L_)), DM_(lattice::discriminant(M_)) {
    if (!basis.square() || basis.rows() != L.rank()) throw Error(Errc::DimensionMismatch, "sublattice basis must be n x n");
    if (det(basis) == 0) throw Error(Errc::Degenerate, "sublattice has infinite index");
    proj_.assign(DM_->order(), -1);
    const std::size_t n = L.rank();
    for (int mu = 0; mu < DM_->order(); ++mu) {
      auto xm = DM_->vector_of(mu);
      std::vector<Rational> xl(n, 0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) xl[j] += xm[i] * static_cast<long>(basis(i, j));
      if (auto e = DL_->element_of(xl)) proj_[mu] = *e;
    }
  }

  const lattice::EvenLattice& sublattice() const { return M_; }
  const lattice::DiscPtr& disc_L() const { return DL_; }
  const lattice::DiscPtr& disc_M() const { return DM_; }
  /// Image of mu in D_L, or -1 when mu is not in L'/M.
  int project(int mu) const { return proj_[mu]; }

  /// Image of a tuple, or -1 in the first slot if some entry is not in L'/M.
  lattice::DiscTuple project(const lattice::DiscTuple& mu) const {
    lattice::DiscTuple r(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      r[i] = proj_[mu[i]];
      if (r[i] < 0) return {-1};
    }
    return r;
  }

  /// (res f)_mu = f_{mu-bar} for mu in (L'/M)^g, else 0.
  template <class V>
  std::vector<V> restrict(const std::vector<V>& f, int g) const {
    const std::int64_t nm = DM_->tuple_count(g);
    if (static_cast<std::int64_t>(f.size()) != DL_->tuple_count(g)) throw Error(Errc::DimensionMismatch, "vector size differs from |D_L|^g");
    std::vector<V> out(nm, V(0));
    for (std::int64_t i = 0; i < nm; ++i) {
      auto p = project(DM_->tuple_at(i, g));
      if (lifts(p, g)) out[i] = f[DL_->tuple_index(p)];
    }
    return out;
  }

  /// (tr f)_lambda = sum of f_mu over mu in (L'/M)^g with mu-bar = lambda.
  template <class V>
  std::vector<V> trace(const std::vector<V>& f, int g) const {
    const std::int64_t nm = DM_->tuple_count(g);
    if (static_cast<std::int64_t>(f.size()) != nm) throw Error(Errc::DimensionMismatch, "vector size differs from |D_M|^g");
    std::vector<V> out(DL_->tuple_count(g), V(0));
    for (std::int64_t i = 0; i < nm; ++i) {
      auto p = project(DM_->tuple_at(i, g));
      if (lifts(p, g)) out[DL_->tuple_index(p)] = out[DL_->tuple_index(p)] + f[i];
    }
    return out;
  }

  /// Restriction as an exact |D_M|^g x |D_L|^g matrix.
  cyclotomic::CycMatrix restriction_matrix(int g, const cyclotomic::FieldPtr& f) const {
    const std::int64_t nm = DM_->tuple_count(g), nl = DL_->tuple_count(g);
    Matrix<cyclotomic::CycNumber> E(nm, nl, cyclotomic::CycNumber());
    for (std::int64_t i = 0; i < nm; ++i) {
      auto p = project(DM_->tuple_at(i, g));
      if (lifts(p, g)) E(i, DL_->tuple_index(p)) = cyclotomic::CycNumber(f, Rational(1));
    }
    return cyclotomic::CycMatrix::from_entries(f, E);
  }

 private:
  static bool lifts(const lattice::DiscTuple& p, int g) { return p.size() == static_cast<std::size_t>(g) && (g == 0 || p[0] >= 0); }

  lattice::EvenLattice L_;
  IntMatrix basis_;
  lattice::EvenLattice M_;
  lattice::DiscPtr DL_, DM_;
  std::vector<int> proj_;
};

}  // namespace siegel::weil

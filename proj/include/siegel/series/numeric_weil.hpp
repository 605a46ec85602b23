#pragma once

#include <complex>
#include <vector>

#include "siegel/metaplectic/word.hpp"
#include "siegel/weil/weil_rep.hpp"

namespace siegel::series {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Double-precision action of the Weil generators on vectors of C[D^g].
/// rho(S) is taken from the exact matrix once; T and R are applied directly.
/// Keeps a reference: the representation must outlive this object.
class NumericWeil {
 public:
  explicit NumericWeil(const weil::WeilRepresentation& rho) : rho_(rho), n_(rho.dim()) {
    auto S = rho.rho_S();
    Sc_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) Sc_[i * n_ + j] = S.entry_is_zero(i, j) ? cplx(0) : S.entry(i, j).to_complex();
    const std::int64_t N = rho.disc().level();
    for (std::int64_t r = 0; r < N; ++r) unit_.push_back(std::polar(1.0, 2 * M_PI * double(r) / double(N)));
    chi_minus_ = std::polar(1.0, -2 * M_PI * rho.signature() / 4.0);
  }

  std::size_t dim() const { return n_; }
  int genus() const { return rho_.genus(); }
  const weil::WeilRepresentation& exact() const { return rho_; }

  CVec basis(std::size_t a) const {
    CVec v(n_, 0.0);
    v.at(a) = 1.0;
    return v;
  }

  /// v <- rho(l) v, or rho(l)^{-1} v when inverse is set.
  void apply(const metaplectic::Letter& l, CVec& v, bool inverse = false) const {
    const auto& D = rho_.disc();
    const int g = rho_.genus();
    switch (l.kind) {
      case metaplectic::Letter::Kind::T:
        for (std::size_t a = 0; a < n_; ++a) {
          cplx z = unit_[D.trace_qB_N(D.tuple_at(static_cast<std::int64_t>(a), g), l.mat)];
          v[a] *= inverse ? std::conj(z) : z;
        }
        return;
      case metaplectic::Letter::Kind::R: {
        // rho(R_A) e_a = chi e_{a A^{-1}}
        const IntMatrix Ai = inverse_unimodular(l.mat);
        const cplx chi = det(l.mat) == 1 ? cplx(1) : chi_minus_;
        CVec out(n_, 0.0);
        for (std::size_t a = 0; a < n_; ++a) {
          auto img = static_cast<std::size_t>(D.tuple_index(D.act(D.tuple_at(static_cast<std::int64_t>(a), g), Ai)));
          if (inverse)
            out[a] = std::conj(chi) * v[img];
          else
            out[img] = chi * v[a];
        }
        v.swap(out);
        return;
      }
      case metaplectic::Letter::Kind::S: {
        CVec out(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
          cplx s = 0;
          for (std::size_t j = 0; j < n_; ++j) s += (inverse ? std::conj(Sc_[j * n_ + i]) : Sc_[i * n_ + j]) * v[j];
          out[i] = s;
        }
        v.swap(out);
        return;
      }
    }
  }

  /// rho(w)^{-1} v for a word w = L_1 ... L_n.
  CVec apply_inverse(const metaplectic::Word& w, CVec v) const {
    if (w.branch_flip & 1) scale(v, sign_center());
    for (const auto& l : w.letters) apply(l, v, true);
    return v;
  }
  /// rho(w) v.
  CVec apply(const metaplectic::Word& w, CVec v) const {
    if (w.branch_flip & 1) scale(v, sign_center());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) apply(*it, v, false);
    return v;
  }

  double sign_center() const { return rho_.signature() % 2 == 0 ? 1.0 : -1.0; }

 private:
  static void scale(CVec& v, double s) {
    for (auto& x : v) x *= s;
  }

  const weil::WeilRepresentation& rho_;
  std::size_t n_;
  std::vector<cplx> Sc_, unit_;
  cplx chi_minus_;
};

}  // namespace siegel::series

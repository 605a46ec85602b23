#pragma once

#include <map>

#include "siegel/core/parallel.hpp"
#include "siegel/doubling/doubling.hpp"
#include "siegel/metaplectic/complex_linalg.hpp"
#include "siegel/series/config.hpp"
#include "siegel/weil/weil_rep.hpp"

namespace siegel::series {

/// Genus-2 Siegel Eisenstein series for a trivial discriminant form and integral weight:
/// sum over GL_2(Z) \ ST(2) of det(C tau + D)^{-k}. A class enters when some representative
/// has height <= H; the last shell (classes first seen at height H) serves as the tail estimate.
class SiegelEisenstein2 {
 public:
  struct Class {
    double c[4], d[4];
    int height;
  };
  struct Value {
    cplx value, last_shell;
  };

  SiegelEisenstein2(const weil::WeilRepresentation& rho, int k, int H) : k_(k), H_(H) {
    if (rho.dim() != 1 || rho.signature() % 8 != 0)
      throw Error(Errc::GenusUnsupported, "genus-2 evaluator needs a trivial discriminant form with sig = 0 mod 8");
    if (k <= 3) throw Error(Errc::NonconvergentWeight, "genus-2 Eisenstein series needs k > 3");
    if (k % 2 != 0) throw Error(Errc::ParityMismatch, "odd weight vanishes identically for trivial D");
    std::map<doubling::SymPair, int> seen;
    doubling::enumerate_ST(2, H, [&](const doubling::SymPair& p) {
      auto key = doubling::gl_canonical(p);
      const int h = static_cast<int>(doubling::height(p));
      auto [it, fresh] = seen.emplace(std::move(key), h);
      if (!fresh) it->second = std::min(it->second, h);
    });
    for (const auto& [p, h] : seen) {
      Class c{};
      for (int i = 0; i < 4; ++i) {
        c.c[i] = double(p.C(i / 2, i % 2));
        c.d[i] = double(p.D(i / 2, i % 2));
      }
      c.height = h;
      classes_.push_back(c);
    }
  }

  std::size_t class_count() const { return classes_.size(); }
  int height() const { return H_; }
  int weight() const { return k_; }

  Value operator()(const metaplectic::CMatrix& tau) const {
    if (tau.rows() != 2 || tau.cols() != 2) throw Error(Errc::DimensionMismatch, "tau must be 2 x 2");
    const cplx t00 = tau(0, 0), t01 = tau(0, 1), t10 = tau(1, 0), t11 = tau(1, 1);
    cplx s = 0, shell = 0;
    for (const auto& c : classes_) {
      const cplx m00 = c.c[0] * t00 + c.c[1] * t10 + c.d[0], m01 = c.c[0] * t01 + c.c[1] * t11 + c.d[1];
      const cplx m10 = c.c[2] * t00 + c.c[3] * t10 + c.d[2], m11 = c.c[2] * t01 + c.c[3] * t11 + c.d[3];
      const cplx term = std::pow(m00 * m11 - m01 * m10, -k_);
      s += term;
      if (c.height == H_) shell += term;
    }
    return {s, shell};
  }

 private:
  int k_, H_;
  std::vector<Class> classes_;
};

}  // namespace siegel::series

#pragma once

#include "siegel/series/genus1.hpp"
#include "siegel/series/genus2.hpp"

namespace siegel::doubling {

struct FJPoint {
  series::cplx tau4, phi0, eis1;
  double relative_error, budget;
};

/// phi_{2,1,0}(tau4, 0, 0) is the x1-average of E2(diag(tau1, tau4)): the x1 integral keeps indices
/// with T_11 = 0, hence T_12 = 0. Compared with the genus-1 series at tau4.
struct FJReport {
  std::vector<FJPoint> points;
  double tolerance;
  bool pass() const {
    for (const auto& p : points)
      if (!(p.relative_error < tolerance)) return false;
    return !points.empty();
  }
};

/// budget = (|last genus-2 shell| + genus-1 tail bound) / |E1|, both truncations' estimates.
inline FJReport fj_degeneration_check(const series::SiegelEisenstein2& E2, const series::Eisenstein1& E1,
                                      const std::vector<series::cplx>& tau4s, double y1 = 2.0, int Q = 32,
                                      double tolerance = 0.05, unsigned threads = 1) {
  using series::cplx;
  if (E1.weight() != Rational(E2.weight())) throw Error(Errc::InvalidKey, "weights differ");
  FJReport rep{{}, tolerance};
  for (cplx t4 : tau4s) {
    std::vector<cplx> vals(static_cast<std::size_t>(Q)), shells(vals.size());
    parallel_for(vals.size(), threads, [&](std::size_t j) {
      metaplectic::CMatrix tau(2, 2);
      tau(0, 0) = cplx(double(j) / Q, y1);
      tau(1, 1) = t4;
      auto v = E2(tau);
      vals[j] = v.value;
      shells[j] = v.last_shell;
    });
    cplx phi0 = pairwise_sum(vals) / double(Q);
    double shell = 0;
    for (auto s : shells) shell = std::max(shell, std::abs(s));
    const cplx e1 = E1(t4)[0];
    rep.points.push_back({t4, phi0, e1, std::abs(phi0 - e1) / std::abs(e1), (shell + E1.tail_bound(t4)) / std::abs(e1)});
  }
  return rep;
}

}  // namespace siegel::doubling

#pragma once

#include <functional>
#include <optional>

#include "siegel/series/genus1.hpp"
#include "siegel/series/petersson.hpp"

namespace siegel::series {

struct PhiDeviation {
  fourier::DiscTuple beta;
  cplx value, expected;
  double tolerance;
};

/// Phi_beta of a genus-1 table: for beta = 0 the result must be e_0 within 2x the
/// reported coefficient error; for beta with q(beta) != 0 it is zero structurally.
struct PhiReport {
  cplx phi0;
  double tolerance;
  std::vector<int> anisotropic_checked;
  std::vector<PhiDeviation> deviations;
  bool pass() const { return deviations.empty(); }
};

inline PhiReport siegel_phi_on_eisenstein_check(const CoefficientTable& t) {
  const auto& f = t.table;
  if (f.genus() != 1) throw Error(Errc::GenusUnsupported, "check expects a genus-1 table");
  const auto& D = *f.disc();
  PhiReport r{0, 0, {}, {}};
  const RatMatrix empty(0, 0);
  auto it = t.error.find(fourier::Key{{0}, RatMatrix{{Rational(0)}}});
  r.tolerance = 2 * (it == t.error.end() ? 0.0 : it->second);
  auto p0 = fourier::siegel_phi(f, {0});
  r.phi0 = p0.get({}, empty);
  if (std::abs(r.phi0 - 1.0) > r.tolerance) r.deviations.push_back({{0}, r.phi0, 1.0, r.tolerance});
  for (int b = 1; b < D.order(); ++b) {
    auto pb = fourier::siegel_phi(f, {b});
    const cplx v = pb.get({}, empty);
    if (!D.moment_class({b}).is_zero()) {
      r.anisotropic_checked.push_back(b);
      if (pb.size() != 0) r.deviations.push_back({{b}, v, 0.0, 0.0});
    } else if (std::abs(v) > r.tolerance) {
      r.deviations.push_back({{b}, v, 0.0, r.tolerance});
    }
  }
  return r;
}

struct PairingReport {
  cplx pairing;          // <f, P_{alpha,m}> by quadrature
  cplx predicted;        // c_{k,1} m^{1-k} c_m(f_alpha)
  double relative_discrepancy;
  double quadrature_tail;
};

/// Compares the Petersson product with a Poincare series against its coefficient formula.
template <class F>
PairingReport poincare_coeff_pairing(const F& f, const Poincare1& P, const Rational& k, cplx c_m, const SeriesConfig& cfg) {
  const auto c = petersson_constant(k, 1);
  auto pr = petersson1(f, P, k.get_d(), cfg);
  const cplx pred = c.value * std::pow(P.index().get_d(), 1 - k.get_d()) * c_m;
  return {pr.value, pred, std::abs(pr.value - pred) / std::abs(pred), pr.tail_estimate};
}

struct UnfoldingReport {
  Rational k, m;
  double c0;            // (4 pi m)^{k-1} / (k-2)!
  cplx quadrature;      // (a): <theta, c0 P_m>
  cplx unfolded;        // (b): c0 Gamma(k-1) / (4 pi m)^{k-1} c_m(theta)
  cplx c_m;
  double quadrature_tail;
};

/// Scalar session only. theta defaults to the truncated Eisenstein series with its
/// coefficient read off numerically.
inline UnfoldingReport unfolding_discrepancy(const weil::WeilRepresentation& rho, const Rational& k, const Rational& m,
                                             const SeriesConfig& cfg,
                                             std::function<CVec(cplx)> theta = {}, std::optional<cplx> c_m_theta = {}) {
  if (rho.dim() != 1 || rho.genus() != 1) throw Error(Errc::InvalidKey, "unfolding demo needs a genus-1 trivial-D session");
  if (m <= 0) throw Error(Errc::NonPositiveIndex, "index m must be positive");
  if (!is_integer(k) || to_i64(k) < 8 || to_i64(k) % 2 != 0) throw Error(Errc::InvalidKey, "unfolding demo needs even k >= 8");
  const double kd = k.get_d(), md = m.get_d();
  UnfoldingReport r{k, m, 0, 0, 0, 0, 0};
  r.c0 = std::exp((kd - 1) * std::log(4 * M_PI * md) - std::lgamma(kd - 1));
  std::optional<Eisenstein1> E;
  if (!theta) {
    E.emplace(rho, k, cfg);
    theta = [&E](cplx tau) { return (*E)(tau); };
    r.c_m = eisenstein_coeffs_genus1(*E, m).table.get({0}, RatMatrix{{m}});
  } else {
    if (!c_m_theta) throw Error(Errc::InvalidKey, "a custom theta needs its m-th coefficient");
    r.c_m = *c_m_theta;
  }
  Poincare1 P(rho, k, 0, m, cfg);
  auto pr = petersson1(theta, P, kd, cfg);
  r.quadrature = r.c0 * pr.value;
  r.quadrature_tail = r.c0 * pr.tail_estimate;
  r.unfolded = r.c0 * std::exp(std::lgamma(kd - 1) - (kd - 1) * std::log(4 * M_PI * md)) * r.c_m;
  return r;
}

}  // namespace siegel::series

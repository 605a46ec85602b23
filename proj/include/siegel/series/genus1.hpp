#pragma once

#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "siegel/core/parallel.hpp"
#include "siegel/fourier/expansion.hpp"
#include "siegel/series/config.hpp"
#include "siegel/series/numeric_weil.hpp"

namespace siegel::series {

/// One coset of Gamma_infty \ Mp_2(Z) for g = 1: a completion (a b; c d), the
/// sign (-1)^{2k branch} of its root and rho(gamma)^{-1} e_col for the requested columns.
struct Coset1 {
  std::int64_t a, b, c, d;
  double sign;
  std::vector<CVec> cols;
};

/// Coprime (c, d) modulo +-1: 0 <= c <= H, |d| <= H, with (0, 1) the only c = 0 entry.
inline std::vector<Coset1> build_cosets1(const NumericWeil& nw, const Rational& k, int H, const std::vector<std::size_t>& columns,
                                         unsigned threads = 1) {
  if (nw.genus() != 1) throw Error(Errc::GenusUnsupported, "genus-1 coset table needs a genus-1 representation");
  const bool odd = !is_integer(k);
  std::vector<std::vector<Coset1>> per_c(static_cast<std::size_t>(H) + 1);
  parallel_for(per_c.size(), threads, [&](std::size_t ci) {
    const std::int64_t c = static_cast<std::int64_t>(ci);
    for (std::int64_t d = -H; d <= H; ++d) {
      if (c == 0 && d != 1) continue;
      if (std::gcd(c, d) != 1) continue;
      Coset1 e{1, 0, c, d, 1.0, {}};
      metaplectic::Word w;
      w.genus = 1;
      if (c != 0) {
        w = metaplectic::complete_bottom_row(IntMatrix{{c}}, IntMatrix{{d}});
        auto el = metaplectic::evaluate(w);
        e.a = el.A()(0, 0), e.b = el.B()(0, 0);
        if (odd && el.branch()) e.sign = -1.0;
      }
      for (auto col : columns) e.cols.push_back(nw.apply_inverse(w, nw.basis(col)));
      per_c[ci].push_back(std::move(e));
    }
  });
  std::vector<Coset1> out;
  for (auto& v : per_c)
    for (auto& e : v) out.push_back(std::move(e));
  return out;
}

/// sum over coset pairs with max(|c|,|d|) > H of |c tau + d|^{-k}.
inline double coset_tail_bound(double k, int H, cplx tau) {
  const double x = tau.real(), n2 = std::norm(tau);
  const double lam = ((n2 + 1) - std::sqrt((n2 - 1) * (n2 - 1) + 4 * x * x)) / 2;
  return 8 * std::pow(lam, -k / 2) * std::pow(double(H), 2 - k) / (k - 2);
}

struct SeriesValue {
  CVec value;
  double error_estimate;
};

/// Genus-1 Eisenstein series E = sum phi^{-2k} rho(gamma)^{-1} e_0 over Gamma_infty \ Mp_2(Z).
class Eisenstein1 {
 public:
  Eisenstein1(const weil::WeilRepresentation& rho, Rational k, SeriesConfig cfg)
      : nw_(rho), k_(std::move(k)), kd_(k_.get_d()), cfg_(cfg) {
    cfg_.validate();
    if (rho.genus() != 1) throw Error(Errc::GenusUnsupported, "Eisenstein1 needs a genus-1 representation");
    check_weight(k_, rho.signature());
    cosets_ = build_cosets1(nw_, k_, cfg_.H, {0}, cfg_.threads);
  }

  const NumericWeil& weil() const { return nw_; }
  const Rational& weight() const { return k_; }
  const SeriesConfig& config() const { return cfg_; }
  std::size_t coset_count() const { return cosets_.size(); }
  double tail_bound(cplx tau) const { return coset_tail_bound(kd_, cfg_.H, tau); }

  CVec operator()(cplx tau) const {
    if (!(tau.imag() > 0)) throw Error(Errc::InvalidKey, "tau must lie in the upper half-plane");
    CVec s(nw_.dim(), 0.0);
    for (const auto& e : cosets_) {
      cplx f = e.sign * principal_pow_neg(cplx(double(e.c)) * tau + double(e.d), kd_);
      const auto& v = e.cols[0];
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += f * v[i];
    }
    return s;
  }

  SeriesValue value(cplx tau) const { return {(*this)(tau), tail_bound(tau)}; }

 private:
  NumericWeil nw_;
  Rational k_;
  double kd_;
  SeriesConfig cfg_;
  std::vector<Coset1> cosets_;
};

/// Genus-1 Poincare series P_{alpha,m} = (1/2) sum e(m gamma tau) phi^{-2k} rho(gamma)^{-1} e_alpha,
/// summed as half the (alpha) and (-alpha) coset sums modulo +-1.
class Poincare1 {
 public:
  Poincare1(const weil::WeilRepresentation& rho, Rational k, int alpha, Rational m, SeriesConfig cfg)
      : nw_(rho), k_(std::move(k)), kd_(k_.get_d()), m_(std::move(m)), cfg_(cfg) {
    cfg_.validate();
    if (rho.genus() != 1) throw Error(Errc::GenusUnsupported, "Poincare1 needs a genus-1 representation");
    check_weight(k_, rho.signature());
    const auto& D = rho.disc();
    if (m_ <= 0) throw Error(Errc::NonPositiveIndex, "Poincare index must be positive");
    if (!D.congruent(RatMatrix{{m_}}, {alpha})) throw Error(Errc::InvalidKey, "index m must lie in q(alpha) + Z");
    cosets_ = build_cosets1(nw_, k_, cfg_.H, {static_cast<std::size_t>(alpha), static_cast<std::size_t>(D.neg(alpha))}, cfg_.threads);
  }

  const Rational& index() const { return m_; }
  double tail_bound(cplx tau) const { return coset_tail_bound(kd_, cfg_.H, tau); }

  CVec operator()(cplx tau) const {
    CVec s(nw_.dim(), 0.0);
    const double m = m_.get_d();
    for (const auto& e : cosets_) {
      cplx j = cplx(double(e.c)) * tau + double(e.d);
      cplx gt = (cplx(double(e.a)) * tau + double(e.b)) / j;
      cplx f = 0.5 * e.sign * principal_pow_neg(j, kd_) * std::exp(cplx(0, 2 * M_PI * m) * gt);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += f * (e.cols[0][i] + e.cols[1][i]);
    }
    return s;
  }

 private:
  NumericWeil nw_;
  Rational k_;
  double kd_;
  Rational m_;
  SeriesConfig cfg_;
  std::vector<Coset1> cosets_;
};

/// Numeric Fourier table with per-key error estimates.
struct CoefficientTable {
  fourier::TruncatedExpansion<cplx> table;
  std::map<fourier::Key, double> error, alias;
  double tail = 0, aliasing = 0, max_error = 0;
};

/// sup_x |E(x + i y)| bound by summing |c tau + d|^{-k} over all coprime pairs.
inline double eisenstein_sup_bound(double k, double y) {
  double s = 1;
  for (int c = 1; c <= 400; ++c)
    for (int j = 0; j <= 400; ++j) s += 2 * std::pow(double(j) * j + double(c) * c * y * y, -k / 2);
  return s * 1.01;
}

/// c_m(alpha) = e^{2 pi m y} (1/Q) sum_j E(x_j + i y)_alpha e(-m x_j), x_j = j/Q.
template <class Fn>
CoefficientTable fourier_coefficients1(const Fn& f, const lattice::DiscPtr& D, const Rational& k, const Rational& m_max,
                                       double y, int Q, double tail, double sup_half_y, unsigned threads = 1) {
  if (Rational(Q) <= m_max) throw Error(Errc::InvalidKey, "quadrature size Q must exceed the largest index");
  std::vector<CVec> samples(static_cast<std::size_t>(Q));
  parallel_for(samples.size(), threads, [&](std::size_t j) { samples[j] = f(cplx(double(j) / Q, y)); });
  CoefficientTable out{fourier::TruncatedExpansion<cplx>(D, 1, k, m_max), {}, {}, tail, 0, 0};
  const double alias_base = sup_half_y * std::exp(-M_PI * Q * y) / (1 - std::exp(-M_PI * Q * y));
  // floating-point floor of the DFT, folded into the aliasing term
  const double rounding = 8 * std::numeric_limits<double>::epsilon() * sup_half_y * std::sqrt(double(Q));
  for (int a = 0; a < D->order(); ++a) {
    Rational m = D->q(a).value();
    for (; m <= m_max; m += 1) {
      cplx s = 0;
      const double md = m.get_d();
      for (int j = 0; j < Q; ++j) s += samples[j][a] * std::exp(cplx(0, -2 * M_PI * md * j / Q));
      s *= std::exp(2 * M_PI * md * y) / Q;
      const double alias = alias_base * std::exp(M_PI * md * y) + rounding * std::exp(2 * M_PI * md * y);
      const double err = std::exp(2 * M_PI * md * y) * tail + alias;
      RatMatrix T{{m}};
      out.table.set({a}, T, s);
      out.error[fourier::Key{{a}, T}] = err;
      out.alias[fourier::Key{{a}, T}] = alias;
      out.aliasing = std::max(out.aliasing, alias);
      out.max_error = std::max(out.max_error, err);
    }
  }
  return out;
}

/// Genus-1 Eisenstein coefficients on the line y = cfg.y_coeff.
inline CoefficientTable eisenstein_coeffs_genus1(const Eisenstein1& E, const Rational& m_max) {
  const auto& cfg = E.config();
  double tail = 0;
  for (int j = 0; j < cfg.Q; ++j) tail = std::max(tail, E.tail_bound(cplx(double(j) / cfg.Q, cfg.y_coeff)));
  return fourier_coefficients1(E, E.weil().exact().disc_ptr(), E.weight(), m_max, cfg.y_coeff, cfg.Q, tail,
                               eisenstein_sup_bound(E.weight().get_d(), cfg.y_coeff / 2), cfg.threads);
}

struct PeterssonResult {
  cplx value;
  double tail_estimate;
  int nodes;
};

/// <f, g> = int_F <f(tau), g(tau)> y^k dx dy / y^2 over |x| <= 1/2, |tau| >= 1, y <= Y,
/// by Gauss-Legendre panels; the y > Y remainder is estimated from the integrand at Y.
template <class F, class G>
PeterssonResult petersson1(const F& f, const G& g, double k, const SeriesConfig& cfg) {
  cfg.validate();
  const auto& gl = GaussLegendre::get(cfg.Q);
  std::vector<double> xs, wx;
  gl.mapped(-0.5, 0.0, xs, wx);
  gl.mapped(0.0, 0.5, xs, wx);
  std::vector<cplx> partial(xs.size());
  std::vector<double> tail(xs.size());
  auto inner = [&](cplx tau) {
    CVec a = f(tau), b = g(tau);
    cplx s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s * std::pow(tau.imag(), k - 2);
  };
  parallel_for(xs.size(), cfg.threads, [&](std::size_t i) {
    const double x = xs[i], y0 = std::sqrt(1 - x * x);
    std::vector<double> breaks{y0};
    for (double b : {y0 + 0.5, 2.0, 3.5, 6.0, 9.0})
      if (b > breaks.back() && b < cfg.Y) breaks.push_back(b);
    breaks.push_back(cfg.Y);
    std::vector<double> ys, wy;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) gl.mapped(breaks[p], breaks[p + 1], ys, wy);
    cplx s = 0;
    for (std::size_t j = 0; j < ys.size(); ++j) s += wy[j] * inner(cplx(x, ys[j]));
    partial[i] = wx[i] * s;
    tail[i] = wx[i] * std::abs(inner(cplx(x, cfg.Y))) / (2 * M_PI);
  });
  cplx total = pairwise_sum(partial);
  double t = 0;
  for (double v : tail) t += v;
  return {total, t, static_cast<int>(xs.size())};
}

}  // namespace siegel::series

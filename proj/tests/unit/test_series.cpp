#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "siegel/series/checks.hpp"

using namespace siegel;
using namespace siegel::series;

namespace {

lattice::DiscPtr disc(const lattice::EvenLattice& L) { return lattice::discriminant(L); }

lattice::EvenLattice unimodular_10_2() {
  using namespace lattice;
  return direct_sum(direct_sum(hyperbolic_plane(), hyperbolic_plane()), e8());
}

SeriesConfig cfg_with(int H, int Q = 32) {
  SeriesConfig c;
  c.H = H;
  c.Q = Q;
  return c;
}

double max_diff(const CVec& a, const CVec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Series, EisensteinHandSumAtHeightOne) {
  weil::WeilRepresentation rho(disc(unimodular_10_2()), 1);
  Eisenstein1 E(rho, 6, cfg_with(1));
  EXPECT_EQ(E.coset_count(), 4u);
  // 1 + (i-1)^-6 + i^-6 + (i+1)^-6 = 1 - i/8 - 1 + i/8
  auto v = E(cplx(0, 1));
  EXPECT_NEAR(std::abs(v[0]), 0.0, 1e-14);
  auto w = E(cplx(0.3, 1.2));
  cplx t(0.3, 1.2);
  cplx hand = 1.0 + std::pow(t - 1.0, -6) + std::pow(t, -6) + std::pow(t + 1.0, -6);
  EXPECT_NEAR(std::abs(w[0] - hand), 0.0, 1e-13);
}

TEST(Series, EisensteinTendsToOne) {
  weil::WeilRepresentation rho(disc(unimodular_10_2()), 1);
  Eisenstein1 E(rho, 6, cfg_with(40));
  cplx tau(0.2, 8.0);
  auto r = E.value(tau);
  EXPECT_LT(std::abs(r.value[0] - 1.0), r.error_estimate + 504 * std::exp(-2 * M_PI * 8.0) * 1.01);
}

TEST(Series, EisensteinMatchesClassicalSeries) {
  weil::WeilRepresentation rho(disc(unimodular_10_2()), 1);
  Eisenstein1 E(rho, 6, cfg_with(40));
  for (cplx tau : {cplx(0, 1), cplx(0.25, 0.9), cplx(-0.4, 1.5)}) {
    auto r = E.value(tau);
    EXPECT_LT(std::abs(r.value[0] - oracle::eisenstein_classical(6, tau)), r.error_estimate) << tau;
  }
}

TEST(Series, ModularitySpotCheck) {
  weil::WeilRepresentation rho(disc(lattice::diagonal_lattice(6)), 1);
  const Rational k = rat(13, 2);
  Eisenstein1 E(rho, k, cfg_with(40));
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.9, 1.6);
  int checked = 0;
  while (checked < 10) {
    auto w = metaplectic::random_word(1, 6, rng);
    auto el = metaplectic::evaluate(w);
    cplx tau(ux(rng), uy(rng));
    metaplectic::CMatrix t(1, 1);
    t(0, 0) = tau;
    cplx gt = metaplectic::act(el.matrix(), t)(0, 0);
    if (gt.imag() < 0.4) continue;
    cplx phi = metaplectic::phi_at(el, t);
    cplx f = std::pow(phi, 13);
    CVec rhs = E.weil().apply(w, E(tau));
    for (auto& x : rhs) x *= f;
    const double tol = 10 * (E.tail_bound(gt) + std::abs(f) * E.tail_bound(tau));
    EXPECT_LT(max_diff(E(gt), rhs), tol) << metaplectic::describe(el);
    ++checked;
  }
}

TEST(Series, ComponentsAtOppositeCosetsAgree) {
  weil::WeilRepresentation rho(disc(lattice::diagonal_lattice(6)), 1);
  Eisenstein1 E(rho, rat(13, 2), cfg_with(30));
  const auto& D = rho.disc();
  auto v = E(cplx(0, 1));
  for (int a = 0; a < D.order(); ++a) EXPECT_NEAR(std::abs(v[a] - v[D.neg(a)]), 0.0, 1e-12);
}

TEST(Series, PoincareSymmetricInAlpha) {
  weil::WeilRepresentation rho(disc(lattice::diagonal_lattice(6)), 1);
  const auto& D = rho.disc();
  const Rational m = D.q(1).value() + 1;
  Poincare1 P(rho, rat(13, 2), 1, m, cfg_with(20));
  Poincare1 Pn(rho, rat(13, 2), D.neg(1), m, cfg_with(20));
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.5, 2.0);
  for (int i = 0; i < 10; ++i) {
    cplx tau(ux(rng), uy(rng));
    EXPECT_LT(max_diff(P(tau), Pn(tau)), 1e-12);
  }
}

TEST(Series, Errors) {
  weil::WeilRepresentation rho(disc(unimodular_10_2()), 1);
  EXPECT_THROW(Eisenstein1(rho, 2, cfg_with(5)), Error);
  try {
    Eisenstein1(rho, 2, cfg_with(5));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonconvergentWeight);
  }
  try {
    Eisenstein1(rho, 5, cfg_with(5));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParityMismatch);
  }
  try {
    Poincare1(rho, 12, 0, 0, cfg_with(5));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPositiveIndex);
  }
  weil::WeilRepresentation r6(disc(lattice::diagonal_lattice(6)), 1);
  try {
    Poincare1(r6, rat(13, 2), 1, 1, cfg_with(5));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidKey);
  }
  try {
    unfolding_discrepancy(rho, 12, 0, cfg_with(5));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPositiveIndex);
  }
  SeriesConfig bad;
  bad.Q = 4;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Series, PeterssonConstantClosedForm) {
  auto c = petersson_constant(12, 1);
  EXPECT_EQ(c.exact.e, Rational(-11));
  EXPECT_EQ(c.exact.q, rat(3628800, 4194304));
  EXPECT_NEAR(c.value / (std::tgamma(11.0) * std::pow(4 * M_PI, -11)), 1.0, 1e-13);
  auto c2 = petersson_constant(10, 2);
  EXPECT_EQ(c2.gamma_args, (std::vector<Rational>{rat(17, 2), Rational(8)}));
  EXPECT_NEAR(c2.value / (std::sqrt(M_PI) * std::pow(4 * M_PI, -17) * std::tgamma(8.5) * std::tgamma(8.0)), 1.0, 1e-12);
  try {
    petersson_constant(4, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WeightTooSmall);
  }
}

TEST(Series, PeterssonConstantGammaRecursion) {
  for (Rational k = rat(5, 2); k <= 30; k += rat(1, 2)) {
    auto ratio = petersson_constant(k + 1, 1).exact / petersson_constant(k, 1).exact;
    EXPECT_EQ(ratio, (PiMonomial{Rational((k - 1) / 4), -1})) << k;
  }
}

TEST(Series, ConeIntegral) {
  auto g1 = cone_integral_check(12, RatMatrix{{Rational(3)}});
  EXPECT_LT(g1.relative_error, 1e-9);
  auto a = cone_integral_check(10, RatMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, 1e-7);
  EXPECT_LT(a.relative_error, 5e-3);
  auto b = cone_integral_check(10, RatMatrix{{Rational(2), Rational(0)}, {Rational(0), Rational(2)}}, 1e-7);
  EXPECT_NEAR(b.numeric / a.numeric / std::pow(2.0, 2 * (1.5 - 10)), 1.0, 5e-3);
  auto c = cone_integral_check(10, RatMatrix{{Rational(2), rat(1, 2)}, {rat(1, 2), Rational(1)}}, 1e-7);
  EXPECT_LT(c.relative_error, 5e-3);
}

TEST(Series, EisensteinCoefficientsAndQDoubling) {
  weil::WeilRepresentation rho(disc(unimodular_10_2()), 1);
  auto cfg = cfg_with(60, 16);
  Eisenstein1 E(rho, 6, cfg);
  auto t16 = eisenstein_coeffs_genus1(E, 3);
  cfg.Q = 32;
  Eisenstein1 E32(rho, 6, cfg);
  auto t32 = eisenstein_coeffs_genus1(E32, 3);
  for (int m = 0; m <= 3; ++m) {
    RatMatrix T{{Rational(m)}};
    const cplx c = t32.table.get({0}, T);
    const double want = oracle::eisenstein_coeff(6, m).get_d();
    EXPECT_LT(std::abs(c - want), t32.error.at(fourier::Key{{0}, T})) << m;
    // the truncated sum is not 1-periodic, so both reported errors (tail + aliasing) bound the change
    const double d = std::abs(c - t16.table.get({0}, T));
    EXPECT_LT(d, t16.error.at(fourier::Key{{0}, T}) + t32.error.at(fourier::Key{{0}, T})) << m;
  }
}

TEST(Series, SiegelPhiOnEisenstein) {
  weil::WeilRepresentation rho(disc(lattice::diagonal_lattice(2)), 1);
  Eisenstein1 E(rho, rat(13, 2), cfg_with(60));
  auto t = eisenstein_coeffs_genus1(E, 2);
  auto r = siegel_phi_on_eisenstein_check(t);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.anisotropic_checked, std::vector<int>{1});
  CoefficientTable zero{fourier::TruncatedExpansion<cplx>(rho.disc_ptr(), 1, rat(13, 2), 2), {}, {}, 0, 0, 0};
  EXPECT_EQ(fourier::siegel_phi(zero.table, {0}).size(), 0u);
  EXPECT_FALSE(siegel_phi_on_eisenstein_check(zero).pass());
}

TEST(Series, CuspFormDecay) {
  double prev = std::numeric_limits<double>::infinity();
  for (double y = 2; y <= 20; y *= 1.25) {
    const double v = std::pow(y, 6) * std::abs(oracle::delta(cplx(0, y)));
    EXPECT_LT(v, prev) << y;
    prev = v;
  }
}

TEST(Series, PoincarePairingAndUnfolding) {
  weil::WeilRepresentation rho(disc(unimodular_10_2()), 1);
  auto cfg = cfg_with(40, 24);
  Poincare1 P(rho, 12, 0, 1, cfg);
  auto delta = [](cplx tau) { return CVec{oracle::delta(tau)}; };
  auto pr = poincare_coeff_pairing(delta, P, 12, 1.0, cfg);
  EXPECT_LT(pr.relative_discrepancy, 1e-2);

  auto u = unfolding_discrepancy(rho, 12, 1, cfg);
  EXPECT_LT(std::abs(u.quadrature), 1e-3 * std::abs(u.unfolded));
  EXPECT_NEAR(std::abs(u.unfolded - oracle::eisenstein_coeff(12, 1).get_d()) / std::abs(u.unfolded), 0.0, 1e-4);
  auto uc = unfolding_discrepancy(rho, 12, 1, cfg, delta, cplx(1.0));
  EXPECT_LT(std::abs(uc.quadrature - uc.unfolded), 1e-2 * std::abs(uc.unfolded));
}

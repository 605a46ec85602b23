// Coprime symmetric pairs of genus 2 by rank stratum, and the genus-2 Eisenstein series
// restricted to its Fourier-Jacobi constant term.
#include <cstdio>

#include "siegel/doubling/fj_check.hpp"

using namespace siegel;

int main() {
  for (int H = 1; H <= 3; ++H) {
    auto s = doubling::stratify(2, H);
    std::printf("H=%d total %lld:", H, static_cast<long long>(s.total));
    for (auto [nu, n] : s.count) std::printf("  rank %d -> %lld", nu, static_cast<long long>(n));
    std::printf("\n");
  }
  for (int nu = 0; nu <= 2; ++nu) {
    auto r = doubling::setofrep_check(2, nu, 2);
    std::printf("representatives nu=%d: %zu candidates, %zu orbits enumerated, %s\n", nu, r.candidates, r.enumerated,
                r.pass() ? "complete" : "incomplete");
  }

  using namespace lattice;
  weil::WeilRepresentation rho(discriminant(direct_sum(direct_sum(hyperbolic_plane(), hyperbolic_plane()), e8())), 1);
  series::SeriesConfig cfg;
  cfg.H = 60;
  series::Eisenstein1 E1(rho, 6, cfg);
  series::SiegelEisenstein2 E2(rho, 6, 3);
  auto rep = doubling::fj_degeneration_check(E2, E1, {{0.3, 1.2}, {-0.2, 2.0}});
  for (const auto& p : rep.points)
    std::printf("tau4 = %+.2f%+.2fi: phi0 = %.8f%+.8fi, E1 = %.8f%+.8fi, rel %.2e (budget %.2e)\n", p.tau4.real(),
                p.tau4.imag(), p.phi0.real(), p.phi0.imag(), p.eis1.real(), p.eis1.imag(), p.relative_error, p.budget);
}

// Numeric Eisenstein series for the unimodular lattice U+U+E8 in weight 6, against -504 sigma_5(m).
#include <cstdio>

#include "siegel/series/genus1.hpp"

using namespace siegel;

int main() {
  using namespace lattice;
  weil::WeilRepresentation rho(discriminant(direct_sum(direct_sum(hyperbolic_plane(), hyperbolic_plane()), e8())), 1);
  series::SeriesConfig cfg;
  cfg.H = 80;
  series::Eisenstein1 E(rho, 6, cfg);
  auto t = series::eisenstein_coeffs_genus1(E, 2);
  const double classical[] = {1, -504, -504 * 33};
  for (int m = 0; m <= 2; ++m) {
    const auto key = fourier::Key{{0}, RatMatrix{{m}}};
    std::printf("c_%d = %.10f  (classical %.1f, error estimate %.3g)\n", m, t.table.get({0}, RatMatrix{{m}}).real(),
                classical[m], t.error.at(key));
  }
  std::printf("value at i: %.12f\n", E(series::cplx(0, 1))[0].real());
}

#pragma once

#include "siegel/cyclotomic/cycnumber.hpp"
#include "siegel/lattice/discriminant.hpp"

namespace siegel::cyclotomic {

/// Conductor used for a discriminant form of level N: lcm(8, N).
inline std::int64_t conductor_for(const lattice::DiscriminantGroup& D) { return lcm64(8, D.level()); }

/// Gauss sum sum_gamma e(q(gamma)) in Q(zeta_M).
inline CycNumber gauss_sum(const lattice::DiscriminantGroup& D, std::int64_t M) {
  if (M % D.level() != 0) throw Error(Errc::ConductorMismatch, "conductor is not a multiple of the level");
  auto f = CyclotomicField::get(M);
  const std::int64_t step = M / D.level();
  std::vector<Rational> c(f->degree(), 0);
  for (int x = 0; x < D.order(); ++x) {
    const auto& p = f->power(D.qN(x) * step);
    for (int k = 0; k < f->degree(); ++k)
      if (p[k]) c[k] += static_cast<long>(p[k]);
  }
  return CycNumber(f, std::move(c));
}

/// Positive square root of |D| as the Milgram-normalised Gauss sum e(-sig/8) sum e(q).
/// Throws MilgramViolation if the given signature is inconsistent with the form.
inline CycNumber sqrt_disc(const lattice::DiscriminantGroup& D, int sig) {
  const std::int64_t M = conductor_for(D);
  CycNumber s = e_of(rat(-sig, 8), M) * gauss_sum(D, M);
  CycNumber sq = s * s;
  if (!(sq == CycNumber(CyclotomicField::get(M), Rational(D.order()))) || s.to_complex().real() <= 0)
    throw Error(Errc::MilgramViolation, "Gauss sum does not square to |D|=" + std::to_string(D.order()) + " for signature " + std::to_string(sig));
  return s;
}

inline CycNumber sqrt_disc(const lattice::DiscriminantGroup& D) { return sqrt_disc(D, D.signature()); }

}  // namespace siegel::cyclotomic

#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "siegel/cycles/cycles.hpp"
#include "siegel/doubling/doubling.hpp"
#include "siegel/io/json.hpp"
#include "siegel/series/checks.hpp"
#include "siegel/series/petersson.hpp"
#include "siegel/weil/sublattice.hpp"
#include "siegel/weil/weil_rep.hpp"

namespace siegelkit {

using namespace siegel;
using io::json;

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success, otherwise what went wrong
};

inline std::vector<lattice::EvenLattice> small_lattices() {
  using namespace lattice;
  return {diagonal_lattice(2), direct_sum(diagonal_lattice(2), hyperbolic_plane()),
          EvenLattice(IntMatrix{{2, 1}, {1, 2}}, "A2"), EvenLattice(IntMatrix{{2, 0}, {0, 2}}, "A1+A1")};
}

inline std::vector<Check> selftest_checks(bool quick, std::uint64_t seed, unsigned threads) {
  const int words = quick ? 5 : 25;
  std::vector<Check> out;

  out.push_back({"weil.unitarity", [=] {
                   std::mt19937_64 rng(seed);
                   for (const auto& L : small_lattices())
                     for (int g = 1; g <= 2; ++g) {
                       weil::WeilRepresentation rho(lattice::discriminant(L), g);
                       for (int t = 0; t < words; ++t) {
                         auto m = rho.rho_word(metaplectic::random_word(g, 8, rng));
                         if (!(m * m.adjoint()).is_identity()) return L.name() + " g=" + std::to_string(g);
                       }
                     }
                   return std::string{};
                 }});

  out.push_back({"weil.word_independence", [=] {
                   std::mt19937_64 rng(seed + 1);
                   for (const auto& L : small_lattices()) {
                     weil::WeilRepresentation rho(lattice::discriminant(L), 1);
                     for (int t = 0; t < words; ++t) {
                       auto w = metaplectic::random_word(1, 8, rng);
                       auto w2 = metaplectic::decompose(metaplectic::evaluate(w));
                       if (!(rho.rho_word(w) == rho.rho_word(w2))) return L.name();
                     }
                   }
                   return std::string{};
                 }});

  out.push_back({"weil.tensor", [=] {
                   std::mt19937_64 rng(seed + 2);
                   auto D = lattice::discriminant(lattice::diagonal_lattice(2));
                   weil::WeilRepresentation r1(D, 1), r2(D, 2);
                   for (int t = 0; t < words; ++t) {
                     auto a = metaplectic::evaluate(metaplectic::random_word(1, 6, rng));
                     auto b = metaplectic::evaluate(metaplectic::random_word(1, 6, rng));
                     if (!(r2.rho(metaplectic::iota(a, b)) == r1.rho(a).kron(r1.rho(b)))) return std::string("mismatch");
                   }
                   return std::string{};
                 }});

  out.push_back({"weil.adjunction", [=] {
                   std::mt19937_64 rng(seed + 3);
                   weil::SublatticeMap sm(lattice::diagonal_lattice(2), IntMatrix{{2}});
                   std::uniform_int_distribution<int> d(-4, 4);
                   for (int g = 1; g <= 2; ++g) {
                     std::vector<Rational> f(sm.disc_L()->tuple_count(g)), h(sm.disc_M()->tuple_count(g));
                     for (auto& x : f) x = d(rng);
                     for (auto& x : h) x = d(rng);
                     auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
                       Rational s = 0;
                       for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
                       return s;
                     };
                     if (dot(sm.restrict(f, g), h) != dot(f, sm.trace(h, g))) return "g=" + std::to_string(g);
                   }
                   return std::string{};
                 }});

  out.push_back({"series.petersson_constant", [] {
                   for (int k = 5; k <= 16; ++k) {
                     auto c = series::petersson_constant(k, 1);
                     if (std::abs(c.exact.value() / c.value - 1) > 1e-12) return "k=" + std::to_string(k);
                   }
                   auto cc = series::cone_integral_check(10, RatMatrix{{1, 0}, {0, 1}});
                   if (cc.relative_error > 5e-3) return "cone " + io::fmt_double(cc.relative_error);
                   return std::string{};
                 }});

  out.push_back({"series.eisenstein_phi", [=] {
                   using namespace lattice;
                   weil::WeilRepresentation rho(discriminant(direct_sum(hyperbolic_plane(), e8())), 1);
                   series::SeriesConfig cfg;
                   cfg.H = quick ? 20 : 60;
                   cfg.threads = threads;
                   series::Eisenstein1 E(rho, 6, cfg);
                   auto r = series::siegel_phi_on_eisenstein_check(series::eisenstein_coeffs_genus1(E, 1));
                   return r.pass() ? std::string{} : "phi0 = " + io::fmt_double(r.phi0.real());
                 }});

  out.push_back({"doubling.strata", [=] {
                   const int H = quick ? 1 : 2;
                   auto s = doubling::stratify(2, H);
                   std::int64_t sum = 0;
                   for (auto [nu, n] : s.count) sum += n;
                   if (sum != s.total) return std::string("strata do not partition");
                   for (int nu = 0; nu <= 2; ++nu)
                     if (!doubling::setofrep_check(2, nu, 2).pass()) return "setofrep nu=" + std::to_string(nu);
                   return std::string{};
                 }});

  out.push_back({"cycles.inversion", [=] {
                   for (const auto& L : {lattice::e8(), lattice::diagonal_lattice(2)}) {
                     auto r = cycles::verify_inversion(*lattice::discriminant(L), 2, quick ? 3 : 6);
                     if (!r.pass()) return L.name();
                   }
                   return std::string{};
                 }});
  return out;
}

/// Runs every check, catching domain errors as failures.
inline json run_selftest(bool quick, std::uint64_t seed, unsigned threads, bool& all_pass) {
  json checks = json::array();
  all_pass = true;
  for (const auto& c : selftest_checks(quick, seed, threads)) {
    std::string why;
    try {
      why = c.run();
    } catch (const Error& e) {
      why = std::string(e.kind()) + ": " + e.detail();
    }
    all_pass = all_pass && why.empty();
    json j{{"name", c.name}, {"pass", why.empty()}};
    if (!why.empty()) j["detail"] = why;
    checks.push_back(j);
  }
  return json{{"quick", quick}, {"seed", seed}, {"checks", checks}, {"pass", all_pass}};
}

}  // namespace siegelkit

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "siegel/fourier/expansion.hpp"
#include "siegel/io/json.hpp"

using namespace siegel;
using namespace siegel::fourier;
using cyclotomic::CycNumber;

namespace {

lattice::DiscPtr disc(IntMatrix g) { return lattice::discriminant(lattice::EvenLattice(std::move(g))); }
lattice::DiscPtr trivial() { return disc(IntMatrix{{0, 1}, {1, 0}}); }
RatMatrix rm(std::initializer_list<std::initializer_list<long>> v) {
  RatMatrix m(v.size(), v.begin()->size());
  std::size_t i = 0;
  for (auto& r : v) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = Rational(x);
    ++i;
  }
  return m;
}
RatMatrix zero(std::size_t g) { return RatMatrix(g, g); }

}  // namespace

TEST(Expansion, KeysAreValidated) {
  TruncatedExpansion<cplx> f(disc(IntMatrix{{2}}), 1, rat(1, 2), 3);
  f.set({1}, RatMatrix{{rat(1, 4)}}, 2.0);
  EXPECT_THROW(f.set({1}, rm({{1}}), 1.0), Error);   // wrong shift class
  EXPECT_THROW(f.set({0}, rm({{-1}}), 1.0), Error);  // not >= 0
  EXPECT_THROW(f.set({0}, rm({{4}}), 1.0), Error);   // beyond cutoff
  EXPECT_THROW(TruncatedExpansion<cplx>(disc(IntMatrix{{2}}), 1, 1, 3), Error);
  for (const auto& [k, v] : f.table()) EXPECT_TRUE(f.disc()->congruent(k.T, k.alpha));
}

TEST(Expansion, SiegelPhi) {
  TruncatedExpansion<cplx> c(trivial(), 1, 4, 5);
  c.set({0}, zero(1), 1.0);
  auto p = siegel_phi(c, {0});
  EXPECT_EQ(p.genus(), 0);
  EXPECT_EQ(p.get({}, zero(0)), cplx(1.0));

  // anisotropic beta kills everything
  auto D2 = disc(IntMatrix{{2}});
  TruncatedExpansion<cplx> h(D2, 1, rat(1, 2), 2);
  h.set({1}, RatMatrix{{rat(1, 4)}}, 1.0);
  h.set({0}, zero(1), 1.0);
  EXPECT_EQ(siegel_phi(h, {1}).size(), 0u);

  TruncatedExpansion<cplx> g2(trivial(), 2, 4, 4);
  g2.set({0, 0}, zero(2), 1.0);
  g2.set({0, 0}, rm({{1, 0}, {0, 0}}), 2.0);
  g2.set({0, 0}, rm({{1, 0}, {0, 1}}), 3.0);
  auto g1 = siegel_phi(g2, {0});
  ASSERT_EQ(g1.size(), 2u);
  EXPECT_EQ(g1.get({0}, zero(1)), cplx(1.0));
  EXPECT_EQ(g1.get({0}, rm({{1}})), cplx(2.0));
}

TEST(Expansion, SiegelPhiLinearAndIterated) {
  // <2> + <-2>: (1,1) is a nonzero isotropic element
  auto D = disc(IntMatrix{{2, 0}, {0, -2}});
  std::mt19937 rng(8);
  auto random_table = [&](int seed) {
    std::mt19937 r(seed);
    TruncatedExpansion<cplx> f(D, 2, 2, 3);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        auto m = D->moment_class({a, b});
        for (int t = 0; t < 3; ++t) {
          RatMatrix T = m;
          T(0, 0) += static_cast<long>(r() % 2);
          if (t == 0) T(1, 1) = m(1, 1), T(0, 1) = T(1, 0) = m(0, 1);
          if (f.admissible({a, b}, T)) f.set({a, b}, T, cplx(r() % 7, r() % 3));
        }
      }
    return f;
  };
  auto f = random_table(1), g = random_table(2);
  for (int beta = 0; beta < 4; ++beta) {
    auto lhs = siegel_phi(f + g, {beta}), rhs = siegel_phi(f, {beta}) + siegel_phi(g, {beta});
    EXPECT_EQ(lhs.table(), rhs.table());
    for (int beta2 = 0; beta2 < 4; ++beta2)
      EXPECT_EQ(siegel_phi(f, {beta2, beta}).table(), siegel_phi(siegel_phi(f, {beta}), {beta2}).table());
  }
}

TEST(Expansion, CoefficientSymmetry) {
  auto D = disc(IntMatrix{{2}});
  TruncatedExpansion<CycNumber> f(D, 2, rat(1, 2), 4);
  auto one = CycNumber(1);
  EXPECT_TRUE(check_coeff_symmetry(f, IntMatrix::identity(2)).empty());
  // a table invariant under alpha -> -alpha (every element of Z/2 is its own negative) with matching T
  f.set({1, 0}, RatMatrix{{rat(1, 4), 0}, {0, 0}}, one);
  f.set({1, 1}, RatMatrix{{rat(1, 4), rat(1, 4)}, {rat(1, 4), rat(1, 4)}}, one);
  EXPECT_TRUE(check_coeff_symmetry(f, IntMatrix::identity(2).scaled(-1)).empty());
  // diag(1,-1) flips the off-diagonal entry, so (1,1) with T12 = -1/4 is required
  EXPECT_EQ(check_coeff_symmetry(f, IntMatrix{{1, 0}, {0, -1}}).size(), 4u);
  f.set({1, 1}, RatMatrix{{rat(1, 4), rat(-1, 4)}, {rat(-1, 4), rat(1, 4)}}, one);
  EXPECT_TRUE(check_coeff_symmetry(f, IntMatrix{{1, 0}, {0, -1}}).empty());
  // swapping the two variables needs the partner key (0,1)
  auto v = check_coeff_symmetry(f, IntMatrix{{0, 1}, {1, 0}});
  EXPECT_FALSE(v.empty());
  EXPECT_EQ(v.size(), check_coeff_symmetry(f, IntMatrix{{0, 1}, {1, 0}}).size());
  f.set({0, 1}, RatMatrix{{0, 0}, {0, rat(1, 4)}}, one);
  EXPECT_TRUE(check_coeff_symmetry(f, IntMatrix{{0, 1}, {1, 0}}).empty());
}

TEST(Expansion, SymmetryReportIsBruteForce) {
  auto D = trivial();
  std::mt19937 rng(31);
  TruncatedExpansion<cplx> f(D, 2, 4, 4);
  for (int a = 0; a <= 2; ++a)
    for (int c = 0; c <= 2; ++c)
      for (int b2 = -2; b2 <= 2; ++b2) {
        RatMatrix T{{a, rat(b2, 2)}, {rat(b2, 2), c}};
        if (f.admissible({0, 0}, T) && rng() % 2) f.set({0, 0}, T, cplx(rng() % 5 + 1, 0));
      }
  IntMatrix A{{1, 1}, {0, 1}};
  auto rep = check_coeff_symmetry(f, A);
  // brute force over all keys in range
  std::size_t expected = 0;
  for (int a = 0; a <= 4; ++a)
    for (int c = 0; c <= 4; ++c)
      for (int b2 = -8; b2 <= 8; ++b2) {
        RatMatrix T{{a, rat(b2, 2)}, {rat(b2, 2), c}};
        if (!lattice::is_positive_semidefinite(T) || trace(T) > 4) continue;
        RatMatrix T2 = congruence(T, A);
        if (trace(T2) > 4) continue;
        if (f.get({0, 0}, T) != f.get({0, 0}, T2)) expected += 2;  // both forms fail together when the twist is trivial
      }
  EXPECT_EQ(rep.size(), expected);
}

TEST(Expansion, CuspTest) {
  TruncatedExpansion<cplx> f(trivial(), 2, 4, 4);
  EXPECT_TRUE(is_cusp(f));
  f.set({0, 0}, rm({{1, 0}, {0, 1}}), 1.0);
  EXPECT_TRUE(is_cusp(f));
  f.set({0, 0}, rm({{1, 1}, {1, 1}}), 1e-12);
  EXPECT_TRUE(is_cusp(f, 1e-9));
  EXPECT_FALSE(is_cusp(f, 0.0));
  f.set({0, 0}, zero(2), 1.0);
  auto r = is_cusp(f, 1e-9);
  EXPECT_FALSE(r);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->T, zero(2));
}

TEST(Expansion, GlReduceExamples) {
  auto r = gl_reduce(rm({{1, 0}, {0, 1}}));
  EXPECT_EQ(r.T, rm({{1, 0}, {0, 1}}));
  EXPECT_EQ(r.A, IntMatrix::identity(2));
  r = gl_reduce(rm({{2, 0}, {0, 1}}));
  EXPECT_EQ(r.T, rm({{1, 0}, {0, 2}}));
  EXPECT_EQ(r.A, (IntMatrix{{0, 1}, {1, 0}}));
  r = gl_reduce(rm({{1, 1}, {1, 1}}));
  EXPECT_EQ(r.T, rm({{0, 0}, {0, 1}}));
  EXPECT_EQ(congruence(rm({{1, 1}, {1, 1}}), r.A), r.T);
  // kernel vector (1,-1) up to sign is the first column
  EXPECT_EQ(std::abs(r.A(0, 0)), 1);
  EXPECT_EQ(r.A(0, 0) + r.A(1, 0), 0);
  EXPECT_THROW(gl_reduce(RatMatrix::identity(3)), Error);
}

TEST(Expansion, GlReduceMatchesExhaustiveSearch) {
  std::mt19937 rng(12);
  std::vector<IntMatrix> gl;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c)
        for (int d = -4; d <= 4; ++d)
          if (std::abs(a * d - b * c) == 1) gl.push_back(IntMatrix{{a, b}, {c, d}});
  int checked = 0;
  while (checked < 60) {
    std::uniform_int_distribution<int> u(-6, 6);
    RatMatrix T{{std::abs(u(rng)), rat(u(rng), 2)}, {0, std::abs(u(rng))}};
    T(1, 0) = T(0, 1);
    if (!lattice::is_positive_semidefinite(T)) continue;
    auto r = gl_reduce(T);
    EXPECT_EQ(congruence(T, r.A), r.T);
    EXPECT_TRUE(is_unimodular(r.A));
    EXPECT_TRUE(0 <= r.T(0, 1) * 2 && r.T(0, 1) * 2 <= r.T(0, 0) && r.T(0, 0) <= r.T(1, 1));
    // the reduced form is the only reduced matrix in the orbit window
    std::set<RatMatrix> found;
    for (const auto& A : gl) {
      RatMatrix S = congruence(T, A);
      if (0 <= S(0, 1) * 2 && S(0, 1) * 2 <= S(0, 0) && S(0, 0) <= S(1, 1)) found.insert(S);
    }
    EXPECT_EQ(found.size(), 1u) << T;
    EXPECT_TRUE(found.count(r.T));
    // idempotent
    auto again = gl_reduce(r.T);
    EXPECT_EQ(again.T, r.T);
    EXPECT_EQ(again.A, IntMatrix::identity(2));
    ++checked;
  }
}

TEST(Expansion, JsonRoundTrip) {
  auto D = disc(IntMatrix{{2}});
  TruncatedExpansion<CycNumber> f(D, 1, rat(1, 2), 3);
  f.set({1}, RatMatrix{{rat(1, 4)}}, cyclotomic::e_of(rat(1, 8), 8));
  f.set({0}, rm({{2}}), CycNumber(cyclotomic::CyclotomicField::get(1), rat(-3, 5)));
  auto j = io::to_json(f);
  auto g = io::expansion_from<CycNumber>(j, D);
  EXPECT_EQ(g.table(), f.table());
  EXPECT_EQ(io::to_json(g).dump(), j.dump());
  TruncatedExpansion<cplx> h(D, 1, rat(1, 2), 3);
  h.set({0}, rm({{1}}), cplx(0.1, -2.5));
  auto h2 = io::expansion_from<cplx>(io::to_json(h), D);
  EXPECT_EQ(h2.get({0}, rm({{1}})), cplx(0.1, -2.5));
  EXPECT_THROW(io::expansion_from<cplx>(io::parse(R"({"genus":1})"), D), Error);
}

#include <gtest/gtest.h>

#include <random>

#include "siegel/cyclotomic/cycmatrix.hpp"
#include "siegel/cyclotomic/gauss_sum.hpp"

using namespace siegel;
using namespace siegel::cyclotomic;

namespace {

CycNumber random_number(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rational> c(f->degree());
  for (auto& x : c) x = rat(d(rng), 1 + (d(rng) + 5) % 3);
  return CycNumber(f, c);
}

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) { return std::abs(a - b) <= tol * (1 + std::abs(b)); }

}  // namespace

TEST(Cyclotomic, MinimalPolynomials) {
  EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(8), (std::vector<std::int64_t>{1, 0, 0, 0, 1}));
  EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
  EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
  EXPECT_EQ(CyclotomicField::get(24)->degree(), 8);
}

TEST(Cyclotomic, RootsOfUnity) {
  for (std::int64_t M : {1, 2, 8, 12, 24, 40}) {
    auto f = CyclotomicField::get(M);
    CycNumber z = CycNumber::root(f, 1);
    EXPECT_EQ(z.pow(M), CycNumber(f, Rational(1))) << M;
    CycNumber s(f);
    for (std::int64_t j = 0; j < M; ++j) s += CycNumber::root(f, j);
    if (M > 1) EXPECT_TRUE(s.is_zero()) << M;
    EXPECT_EQ(z * z.conj(), CycNumber(f, Rational(1)));
  }
}

TEST(Cyclotomic, EOfRespectsConductor) {
  EXPECT_TRUE(close(e_of(rat(1, 4), 8).to_complex(), {0, 1}));
  EXPECT_TRUE(close(e_of(rat(-5, 8), 8).to_complex(), std::polar(1.0, -2 * M_PI * 5 / 8)));
  try {
    e_of(rat(1, 3), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ConductorMismatch);
  }
}

TEST(Cyclotomic, ArithmeticMatchesComplex) {
  std::mt19937 rng(7);
  for (std::int64_t M : {8, 12, 24}) {
    auto f = CyclotomicField::get(M);
    for (int t = 0; t < 30; ++t) {
      CycNumber a = random_number(f, rng), b = random_number(f, rng);
      EXPECT_TRUE(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
      EXPECT_TRUE(close((a + b).to_complex(), a.to_complex() + b.to_complex()));
      EXPECT_TRUE(close(a.conj().to_complex(), std::conj(a.to_complex())));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    }
  }
}

TEST(Cyclotomic, MixedConductors) {
  CycNumber a = e_of(rat(1, 3), 3), b = e_of(rat(1, 8), 8);
  CycNumber p = a * b;
  EXPECT_EQ(p.conductor(), 24);
  EXPECT_EQ(p, e_of(rat(11, 24), 24));
  EXPECT_EQ(CycNumber() + a, a);
}

TEST(Cyclotomic, SqrtDisc) {
  lattice::DiscriminantGroup D(lattice::diagonal_lattice(2));
  CycNumber s = sqrt_disc(D);
  EXPECT_EQ(s * s, CycNumber(CyclotomicField::get(8), Rational(2)));
  EXPECT_TRUE(close(s.to_complex(), {std::sqrt(2.0), 0}));
  try {
    sqrt_disc(D, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MilgramViolation);
  }
  // Milgram for a few more forms
  for (auto G : {IntMatrix{{2, -1}, {-1, 2}}, IntMatrix{{6}}, IntMatrix{{-2}}, IntMatrix{{0, 2}, {2, 0}}, IntMatrix{{2, 0}, {0, 2}}}) {
    lattice::DiscriminantGroup E{lattice::EvenLattice(G)};
    CycNumber t = sqrt_disc(E);
    EXPECT_TRUE(close(t.to_complex(), {std::sqrt(static_cast<double>(E.order())), 0})) << G;
  }
}

TEST(CycMatrix, ProductAdjointKron) {
  std::mt19937 rng(11);
  auto f = CyclotomicField::get(12);
  Matrix<CycNumber> a(3, 3, CycNumber()), b(3, 3, CycNumber());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      a(i, j) = random_number(f, rng);
      b(i, j) = random_number(f, rng);
    }
  CycMatrix A = CycMatrix::from_entries(f, a), B = CycMatrix::from_entries(f, b);
  auto P = (A * B).to_complex(), Q = A.to_complex() * B.to_complex();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_TRUE(close(P(i, j), Q(i, j)));
      EXPECT_EQ((A * B).entry(i, j), [&] {
        CycNumber s;
        for (std::size_t l = 0; l < 3; ++l) s += a(i, l) * b(l, j);
        return s;
      }());
      EXPECT_EQ(A.adjoint().entry(j, i), a(i, j).conj());
    }
  EXPECT_EQ(A.kron(B).entry(4, 7), a(1, 2) * b(1, 1));
  EXPECT_EQ(A + B - B, A);
  EXPECT_EQ(A.scaled(CycNumber(f, rat(2, 3))).entry(0, 0), a(0, 0) * rat(2, 3));
  EXPECT_EQ(CycMatrix::identity(f, 3) * A, A);
}

// Exact Weil representation of <2> in genus 1 and 2: generator images, unitarity and
// agreement of two different words for the same metaplectic element.
#include <iostream>
#include <random>

#include "siegel/weil/weil_rep.hpp"

using namespace siegel;

int main() {
  auto D = lattice::discriminant(lattice::diagonal_lattice(2));
  weil::WeilRepresentation rho(D, 1);
  auto S = rho.rho_S();
  std::cout << "rho(S) for <2>:\n";
  for (std::size_t i = 0; i < S.rows(); ++i) {
    for (std::size_t j = 0; j < S.cols(); ++j) std::cout << "  " << S.entry(i, j).to_complex();
    std::cout << "\n";
  }
  std::cout << "rho(S)^8 = I: " << std::boolalpha << (S * S * S * S * S * S * S * S).is_identity() << "\n";

  std::mt19937 rng(7);
  weil::WeilRepresentation rho2(D, 2);
  for (int t = 0; t < 3; ++t) {
    auto w = metaplectic::random_word(2, 8, rng);
    auto w2 = metaplectic::decompose(metaplectic::evaluate(w));
    auto m = rho2.rho_word(w);
    std::cout << "word of length " << w.letters.size() << " vs " << w2.letters.size() << ": unitary "
              << (m * m.adjoint()).is_identity() << ", same matrix " << (m == rho2.rho_word(w2)) << "\n";
  }
}

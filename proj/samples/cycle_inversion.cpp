// Ordinary and primitive special-cycle symbols over E8 and <2>.
#include <iostream>

#include "siegel/cycles/cycles.hpp"

using namespace siegel;
using namespace siegel::cycles;

namespace {

void print(const FormalCycleSum& f) {
  for (const auto& [s, c] : f.terms()) {
    std::cout << "  " << (c > 0 ? "+" : "") << c << " " << kind_name(s.kind) << " T=[";
    for (std::size_t i = 0; i < s.T.rows(); ++i)
      for (std::size_t j = 0; j < s.T.cols(); ++j) std::cout << s.T(i, j) << (i + 1 == s.T.rows() && j + 1 == s.T.cols() ? "" : " ");
    std::cout << "] alpha=(";
    for (std::size_t i = 0; i < s.alpha.size(); ++i) std::cout << s.alpha[i] << (i + 1 < s.alpha.size() ? "," : "");
    std::cout << ")\n";
  }
}

}  // namespace

int main() {
  auto D = lattice::discriminant(lattice::e8());
  CycleSymbol z{Kind::Ordinary, RatMatrix{{1, 0}, {0, 4}}, {0, 0}, false};
  std::cout << "Z(diag(1,4)) over E8:\n";
  print(expand_ordinary(*D, z));
  CycleSymbol p{Kind::Primitive, RatMatrix{{16}}, {0}, false};
  std::cout << "Z_prim(16) over E8:\n";
  print(expand_primitive(*D, p));

  auto D2 = lattice::discriminant(lattice::diagonal_lattice(2));
  std::cout << "Z(1) over <2>:\n";
  print(expand_ordinary(*D2, {Kind::Ordinary, RatMatrix{{1}}, {0}, false}));
  auto r = verify_inversion(*D2, 2, 6);
  std::cout << "inversion over <2>, g=2, tr T <= 6: " << r.checked << " symbols, " << (r.pass() ? "exact" : "FAILED") << "\n";
}

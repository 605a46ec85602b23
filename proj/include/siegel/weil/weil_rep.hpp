#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "siegel/cyclotomic/cycmatrix.hpp"
#include "siegel/cyclotomic/gauss_sum.hpp"
#include "siegel/metaplectic/word.hpp"

namespace siegel::weil {

using cyclotomic::CycMatrix;
using cyclotomic::CycNumber;
using lattice::DiscPtr;
using lattice::DiscTuple;
using metaplectic::Letter;
using metaplectic::MpElement;
using metaplectic::Word;

namespace detail {

inline std::string matrix_key(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

inline void write_cycmatrix(std::ostream& os, const CycMatrix& m) {
  os << m.field()->conductor() << ' ' << m.rows() << ' ' << m.cols() << ' ' << m.scale().get_str() << '\n';
  auto E = m.to_entries();
  // integer part: entry / scale
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& c : E(i, j).coeffs()) os << (m.scale() == 0 ? Rational(0) : Rational(c / m.scale())).get_str() << ' ';
  os << '\n';
}

inline std::optional<CycMatrix> read_cycmatrix(std::istream& is) {
  std::int64_t M;
  std::size_t r, c;
  std::string s;
  if (!(is >> M >> r >> c >> s)) return std::nullopt;
  auto f = cyclotomic::CyclotomicField::get(M);
  Rational scale = parse_rational(s);
  Matrix<CycNumber> E(r, c, CycNumber());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Rational> v(f->degree());
      for (auto& x : v) {
        std::string t;
        if (!(is >> t)) return std::nullopt;
        x = parse_rational(t) * scale;
      }
      E(i, j) = CycNumber(f, std::move(v));
    }
  return CycMatrix::from_entries(f, E);
}

}  // namespace detail

/// Weil representation rho_{L,g} on C[D^g], basis e_alpha ordered by DiscriminantGroup::tuple_index.
///   rho(T_B) e_a = e(tr(q(a)B)) e_a
///   rho(S) e_a = e(-g sig/8) |D|^{-g/2} sum_b e(-sum_i (b_i,a_i)) e_b
///   rho(R_A) e_a = chi(A) e_{a A^{-1}}, chi = 1 or e(-sig/4) according to det A = 1 or -1
class WeilRepresentation {
 public:
  WeilRepresentation(DiscPtr D, int genus, int signature) : D_(std::move(D)), g_(genus), sig_(signature) {
    if (genus < 0) throw Error(Errc::DimensionMismatch, "genus must be nonnegative");
    M_ = cyclotomic::conductor_for(*D_);
    field_ = cyclotomic::CyclotomicField::get(M_);
    dim_ = D_->tuple_count(genus, 1 << 13);
    sqrtD_ = cyclotomic::sqrt_disc(*D_, sig_);
  }
  WeilRepresentation(DiscPtr D, int genus) : WeilRepresentation(D, genus, D->signature()) {}

  const lattice::DiscriminantGroup& disc() const { return *D_; }
  const DiscPtr& disc_ptr() const { return D_; }
  int genus() const { return g_; }
  int signature() const { return sig_; }
  std::int64_t conductor() const { return M_; }
  const cyclotomic::FieldPtr& field() const { return field_; }
  std::size_t dim() const { return static_cast<std::size_t>(dim_); }
  const CycNumber& sqrt_disc() const { return sqrtD_; }

  /// e(k/M) exponent for q-values measured in units of 1/N.
  std::int64_t scale_exp(std::int64_t vN) const { return vN * (M_ / D_->level()); }

  CycMatrix rho_T(const IntMatrix& B) const {
    check_g(B);
    if (!B.is_symmetric()) throw Error(Errc::NotSymmetric, "T_B needs symmetric B");
    return cached("T" + detail::matrix_key(B), [&] {
      std::vector<int> perm(dim());
      std::vector<std::int64_t> ex(dim());
      for (std::size_t a = 0; a < dim(); ++a) {
        perm[a] = static_cast<int>(a);
        ex[a] = scale_exp(D_->trace_qB_N(D_->tuple_at(static_cast<std::int64_t>(a), g_), B));
      }
      return CycMatrix::monomial(field_, perm, ex);
    });
  }

  CycMatrix rho_R(const IntMatrix& A) const {
    check_g(A);
    if (!is_unimodular(A)) throw Error(Errc::NotUnimodular, "R_A needs A in GL(g,Z)");
    return cached("R" + detail::matrix_key(A), [&] {
      IntMatrix Ai = inverse_unimodular(A);
      std::vector<int> perm(dim());
      const std::int64_t ex = det(A) == 1 ? 0 : mod_floor(-sig_ * (M_ / 4), M_);
      for (std::size_t a = 0; a < dim(); ++a) {
        auto alpha = D_->tuple_at(static_cast<std::int64_t>(a), g_);
        perm[a] = static_cast<int>(D_->tuple_index(D_->act(alpha, Ai)));
      }
      return CycMatrix::monomial(field_, perm, std::vector<std::int64_t>(dim(), ex));
    });
  }

  CycMatrix rho_S() const {
    return cached("S", [&] {
      if (auto m = load_disk()) return *m;
      // e(-g sig/8) / sqrt|D|^g = e(-g sig/8) s^g / |D|^g
      CycNumber c = cyclotomic::e_of(rat(-g_ * sig_, 8), M_) * sqrtD_.pow(g_) *
                    rat(1, static_cast<long>(pow_int(D_->order(), g_)));
      std::vector<std::vector<std::int64_t>> E(dim(), std::vector<std::int64_t>(dim()));
      std::vector<DiscTuple> tup(dim());
      for (std::size_t a = 0; a < dim(); ++a) tup[a] = D_->tuple_at(static_cast<std::int64_t>(a), g_);
      for (std::size_t b = 0; b < dim(); ++b)
        for (std::size_t a = 0; a < dim(); ++a) E[b][a] = scale_exp(-D_->pairingN(tup[b], tup[a]));
      auto m = CycMatrix::from_exponents(field_, c, E);
      store_disk(m);
      return m;
    });
  }

  /// The centre (I,-1) acts by (-1)^sig.
  CycMatrix rho_center() const {
    std::vector<int> perm(dim());
    for (std::size_t a = 0; a < dim(); ++a) perm[a] = static_cast<int>(a);
    return CycMatrix::monomial(field_, perm, std::vector<std::int64_t>(dim(), 0), Rational(sig_ % 2 == 0 ? 1 : -1));
  }

  CycMatrix rho_letter(const Letter& l) const {
    switch (l.kind) {
      case Letter::Kind::S: return rho_S();
      case Letter::Kind::T: return rho_T(l.mat);
      case Letter::Kind::R: return rho_R(l.mat);
    }
    return identity();
  }

  CycMatrix identity() const { return CycMatrix::identity(field_, dim()); }

  CycMatrix rho_word(const Word& w) const {
    if (w.genus != g_) throw Error(Errc::DimensionMismatch, "word genus differs from representation genus");
    CycMatrix r = identity();
    for (const auto& l : w.letters) r = r * rho_letter(l);
    if (w.branch_flip & 1) r = r * rho_center();
    return r;
  }

  CycMatrix rho(const MpElement& e) const { return rho_word(metaplectic::decompose(e)); }

  static std::int64_t pow_int(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r = siegel::detail::checked_mul(r, b);
    return r;
  }

 private:
  void check_g(const IntMatrix& m) const {
    if (m.rows() != static_cast<std::size_t>(g_) || m.cols() != static_cast<std::size_t>(g_))
      throw Error(Errc::DimensionMismatch, "generator size differs from genus");
  }

  CycMatrix cached(const std::string& key, const std::function<CycMatrix()>& make) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    CycMatrix m = make();
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, m);
    return m;
  }

  std::string disk_name() const {
    std::ostringstream os;
    os << D_->lattice().gram() << "|g" << g_ << "|sig" << sig_;
    return "weil_S_" + std::to_string(std::hash<std::string>{}(os.str())) + ".txt";
  }
  std::optional<CycMatrix> load_disk() const {
    const char* dir = std::getenv("WEILREP_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    std::ifstream in(std::filesystem::path(dir) / disk_name());
    if (!in) return std::nullopt;
    return detail::read_cycmatrix(in);
  }
  void store_disk(const CycMatrix& m) const {
    const char* dir = std::getenv("WEILREP_CACHE_DIR");
    if (!dir || !*dir) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(std::filesystem::path(dir) / disk_name());
    if (out) detail::write_cycmatrix(out, m);
  }

  DiscPtr D_;
  int g_, sig_;
  std::int64_t M_;
  cyclotomic::FieldPtr field_;
  std::int64_t dim_;
  CycNumber sqrtD_;
  mutable std::mutex mu_;
  mutable std::map<std::string, CycMatrix> cache_;
};

}  // namespace siegel::weil

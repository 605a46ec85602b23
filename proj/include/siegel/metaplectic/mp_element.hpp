#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "siegel/core/intmath.hpp"
#include "siegel/metaplectic/complex_linalg.hpp"

namespace siegel::metaplectic {

inline IntMatrix J_matrix(std::size_t g) {
  IntMatrix J(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    J(i, g + i) = -1;
    J(g + i, i) = 1;
  }
  return J;
}

inline bool is_symplectic(const IntMatrix& M) {
  if (!M.square() || M.rows() % 2) return false;
  const auto J = J_matrix(M.rows() / 2);
  return M.transpose() * J * M == J;
}

/// Element of Mp(2g,Z): a symplectic matrix with one of the two holomorphic roots
/// phi(tau)^2 = det(C tau + D). The branch bit records the sign of phi at tau0 = iI
/// relative to the principal root of det(C i + D).
class MpElement {
 public:
  MpElement() = default;
  MpElement(IntMatrix M, int branch) : M_(std::move(M)), branch_(branch & 1) {
    if (!M_.square() || M_.rows() % 2) throw Error(Errc::DimensionMismatch, "symplectic matrix must be 2g x 2g");
  }

  int genus() const { return static_cast<int>(M_.rows() / 2); }
  const IntMatrix& matrix() const { return M_; }
  int branch() const { return branch_; }
  IntMatrix A() const { return M_.block(0, 0, genus(), genus()); }
  IntMatrix B() const { return M_.block(0, genus(), genus(), genus()); }
  IntMatrix C() const { return M_.block(genus(), 0, genus(), genus()); }
  IntMatrix D() const { return M_.block(genus(), genus(), genus(), genus()); }

  bool operator==(const MpElement& o) const { return branch_ == o.branch_ && M_ == o.M_; }
  bool operator!=(const MpElement& o) const { return !(*this == o); }

  /// det(C tau0 + D), exact.
  GaussInt det_at_tau0() const { return det_gaussian(C(), D()); }

  /// phi(tau0).
  cplx phi_at_tau0() const {
    cplx r = principal_sqrt(det_at_tau0().to_complex());
    return branch_ ? -r : r;
  }

 private:
  IntMatrix M_;
  int branch_ = 0;
};

inline IntMatrix from_blocks(const IntMatrix& A, const IntMatrix& B, const IntMatrix& C, const IntMatrix& D) {
  const std::size_t g = A.rows();
  IntMatrix M(2 * g, 2 * g);
  M.set_block(0, 0, A);
  M.set_block(0, g, B);
  M.set_block(g, 0, C);
  M.set_block(g, g, D);
  return M;
}

inline MpElement mp_identity(int g) { return MpElement(IntMatrix::identity(2 * g), 0); }

/// The nontrivial central element (I, -1).
inline MpElement mp_center(int g) { return MpElement(IntMatrix::identity(2 * g), 1); }

inline MpElement mp_S(int g) { return MpElement(J_matrix(g), 0); }

inline MpElement mp_T(const IntMatrix& B) {
  if (!B.is_symmetric()) throw Error(Errc::NotSymmetric, "T_B needs symmetric B");
  const std::size_t g = B.rows();
  return MpElement(from_blocks(IntMatrix::identity(g), B, IntMatrix(g, g), IntMatrix::identity(g)), 0);
}

inline MpElement mp_R(const IntMatrix& A) {
  if (!is_unimodular(A)) throw Error(Errc::NotUnimodular, "R_A needs A in GL(g,Z)");
  const std::size_t g = A.rows();
  return MpElement(from_blocks(A, IntMatrix(g, g), IntMatrix(g, g), inverse_unimodular(A).transpose()), 0);
}

/// gamma . tau = (A tau + B)(C tau + D)^{-1}.
inline CMatrix act(const IntMatrix& M, const CMatrix& tau) {
  const std::size_t g = M.rows() / 2;
  CMatrix A = to_complex(M.block(0, 0, g, g)), B = to_complex(M.block(0, g, g, g));
  CMatrix C = to_complex(M.block(g, 0, g, g)), D = to_complex(M.block(g, g, g, g));
  return (A * tau + B) * inverse(C * tau + D);
}

inline CMatrix tau0(std::size_t g) { return scalar_identity(g, cplx(0.0, 1.0)); }

/// phi(tau), continued analytically from tau0 along the segment tau0 -> tau.
inline cplx phi_at(const MpElement& e, const CMatrix& tau) {
  const std::size_t g = static_cast<std::size_t>(e.genus());
  const CMatrix C = to_complex(e.C()), D = to_complex(e.D());
  const CMatrix t0 = tau0(g);
  auto p = [&](double t) {
    CMatrix x(g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) x(i, j) = t0(i, j) + t * (tau(i, j) - t0(i, j));
    return det(C * x + D);
  };
  cplx s = e.phi_at_tau0();
  cplx pt = e.det_at_tau0().to_complex();
  double t = 0.0, h = 0.25;
  const double max_arg = 0.4;
  while (t < 1.0) {
    if (t + h > 1.0) h = 1.0 - t;
    cplx pm = p(t + h / 2), pe = p(t + h);
    if (std::abs(std::arg(pm / pt)) < max_arg && std::abs(std::arg(pe / pm)) < max_arg) {
      s *= std::sqrt(pe / pt);
      pt = pe;
      t += h;
      h *= 2;
    } else {
      h /= 2;
      if (h < 1e-12) throw Error(Errc::PrecisionExhausted, "square-root continuation did not settle");
    }
  }
  return s;
}

/// Branch bit of the element with matrix M whose root takes the value v at tau0.
inline int branch_from_value(const IntMatrix& M, cplx v) {
  const std::size_t g = M.rows() / 2;
  cplx r = principal_sqrt(det_gaussian(M.block(g, 0, g, g), M.block(g, g, g, g)).to_complex());
  double dp = std::abs(v - r), dm = std::abs(v + r);
  // |r| >= 1, so the two candidates are at least 2 apart
  if (std::min(dp, dm) > 1e-6 * std::max(1.0, std::abs(r)))
    throw Error(Errc::PrecisionExhausted, "branch value matches neither root");
  return dp <= dm ? 0 : 1;
}

/// (M1,phi1)(M2,phi2) = (M1 M2, phi1(M2 tau) phi2(tau)).
inline MpElement compose(const MpElement& a, const MpElement& b) {
  if (a.genus() != b.genus()) throw Error(Errc::DimensionMismatch, "genus mismatch in compose");
  IntMatrix M = a.matrix() * b.matrix();
  cplx v;
  if (a.C().is_zero()) {
    // phi_a is constant
    v = a.phi_at_tau0() * b.phi_at_tau0();
  } else {
    v = phi_at(a, act(b.matrix(), tau0(b.genus()))) * b.phi_at_tau0();
  }
  return MpElement(M, branch_from_value(M, v));
}

inline MpElement inverse(const MpElement& a) {
  IntMatrix Mi = from_blocks(a.D().transpose(), (-a.B()).transpose(), (-a.C()).transpose(), a.A().transpose());
  MpElement cand(Mi, 0);
  if (compose(a, cand).branch() == 0) return cand;
  return MpElement(Mi, 1);
}

inline MpElement power(const MpElement& a, int n) {
  MpElement r = mp_identity(a.genus());
  for (int i = 0; i < n; ++i) r = compose(r, a);
  return r;
}

/// Block embedding Mp(2r) x Mp(2(g-r)) -> Mp(2g).
inline MpElement iota(const MpElement& a, const MpElement& b) {
  IntMatrix M = from_blocks(block_diag(a.A(), b.A()), block_diag(a.B(), b.B()), block_diag(a.C(), b.C()), block_diag(a.D(), b.D()));
  return MpElement(M, branch_from_value(M, a.phi_at_tau0() * b.phi_at_tau0()));
}

/// Projection of an element of the Klingen parabolic P_{g,r} to Mp(2r).
inline MpElement klingen_star(const MpElement& e, int r) {
  const int g = e.genus();
  if (r < 0 || r > g) throw Error(Errc::DimensionMismatch, "klingen_star needs 0 <= r <= g");
  const IntMatrix A = e.A(), B = e.B(), C = e.C(), D = e.D();
  const std::size_t ur = static_cast<std::size_t>(r), ug = static_cast<std::size_t>(g);
  for (std::size_t i = 0; i < ug; ++i)
    for (std::size_t j = 0; j < ug; ++j) {
      bool in_r_i = i < ur, in_r_j = j < ur;
      if (in_r_i && !in_r_j && A(i, j) != 0) throw Error(Errc::NotInParabolic, "A has a nonzero upper-right block");
      if (!(in_r_i && in_r_j) && C(i, j) != 0) throw Error(Errc::NotInParabolic, "C is not supported on the upper-left block");
      if (!in_r_i && in_r_j && D(i, j) != 0) throw Error(Errc::NotInParabolic, "D has a nonzero lower-left block");
    }
  IntMatrix Ms = from_blocks(A.block(0, 0, ur, ur), B.block(0, 0, ur, ur), C.block(0, 0, ur, ur), D.block(0, 0, ur, ur));
  IntMatrix D4 = D.block(ur, ur, ug - ur, ug - ur);
  if (!is_unimodular(D4) || !is_symplectic(e.matrix())) throw Error(Errc::NotInParabolic, "element is not in the Klingen parabolic");
  cplx v = e.phi_at_tau0() / principal_sqrt(cplx(static_cast<double>(det(D4)), 0.0));
  return MpElement(Ms, branch_from_value(Ms, v));
}

inline std::string describe(const MpElement& e) {
  std::string s;
  s += "{matrix: ";
  for (std::size_t i = 0; i < e.matrix().rows(); ++i) {
    s += i ? "," : "";
    s += "[";
    for (std::size_t j = 0; j < e.matrix().cols(); ++j) s += (j ? "," : "") + std::to_string(e.matrix()(i, j));
    s += "]";
  }
  return s + ", branch: " + std::to_string(e.branch()) + "}";
}

}  // namespace siegel::metaplectic

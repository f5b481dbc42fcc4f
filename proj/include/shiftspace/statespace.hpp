#pragma once

#include <string>
#include <vector>

#include "shiftspace/rational.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Realization data for r centered at `center` (= a0):
//   r(z) = d + (z - a0) * G (I - (z - a0) T)^{-1} b,
// with the induced state-space basis row
//   Z(z)  = G (I - (z - a0) T)^{-1}          (1 x N).
// The entries of Z span the N-dimensional space of rational functions
// m(z)/q(z) with deg m <= N - 1.
struct Realization {
  Complex d{0.0, 0.0};
  Eigen::RowVectorXcd G;
  CMat T;
  CVec b;
  Complex center{0.0, 0.0};

  int N() const { return static_cast<int>(T.rows()); }
};

// Companion-form realization at center 0. Throws PoleAtOrigin when q(0) = 0
// (relative tolerance 1e-12); use realize_at or StateBasis::canonical then.
Realization realize(const RationalFn& r);

// Companion-form realization at an arbitrary regular center.
Realization realize_at(const RationalFn& r, Complex center);

// First point of the deterministic grid 0, 1/2, -1/2, 1, -1, 3/2, ... that
// keeps |q| above 1e-2 * scale(q).
Complex select_center(const RationalFn& r);

// A rational function together with a concrete realization/basis choice.
// All higher modules consume this pair; the symmetric matrix X and the
// coefficient vector F of the branch decomposition are basis-dependent
// (covariant under congruence / similarity), so the choice is explicit.
class StateBasis {
 public:
  StateBasis(RationalFn r, Realization real, std::string label);

  // Companion form; center auto-selected (0 when q(0) != 0).
  static StateBasis canonical(const RationalFn& r);
  // Basis (1, z, ..., z^{N-1-k}, 1/z, ..., 1/z^k) for q(z) = c z^k. This is
  // the basis in which the closed-form X matrices for z^M + 1/z are stated.
  static StateBasis laurent(const RationalFn& r);
  // Basis e_n(z) = 1/(1 - conj(a_n) z) for a Blaschke product with pairwise
  // distinct zeros: G = (1,...,1), T = diag(conj a_n) exactly.
  static StateBasis blaschke(const std::vector<Complex>& zeros);
  // Basis with prescribed numerators: e_j = m_j / q, deg m_j <= N-1.
  static StateBasis from_numerators(const RationalFn& r, const std::vector<Poly>& numerators,
                                    std::string label);

  // Z_new(z) = Z(z) * S (S invertible). Realization maps by similarity.
  StateBasis with_change_of_basis(const CMat& S, std::string label) const;

  const RationalFn& r() const { return r_; }
  const Realization& realization() const { return real_; }
  int N() const { return real_.N(); }
  const std::string& label() const { return label_; }

  // Row vector Z(z); throws PoleOfR on the pole set of r.
  Eigen::RowVectorXcd eval_Z(Complex z) const;

  // G (I - (z-a0)T)^{-1} (I - (w-a0)T)^{-1} b  ==  (r(z) - r(w))/(z - w).
  Complex divided_difference(Complex z, Complex w) const;

  // For f = Z * coeffs, evaluates sum_n f(w_n) / (r'(w_n)(z - w_n)) over the
  // preimages w_n of alpha; equals f(z)/(r(z) - alpha) identically.
  Complex sum_formula(const CVec& coeffs, Complex z, Complex alpha) const;

  bool is_real(double tolerance = 1e-9) const;

 private:
  RationalFn r_;
  Realization real_;
  std::string label_;
};

}  // namespace shiftspace

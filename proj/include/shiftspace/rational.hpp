#pragma once

#include <optional>
#include <vector>

#include "shiftspace/poly.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Expansion of 1/(r(z) - alpha) into simple fractions over the preimages
// w_n of alpha:
//   1/(r(z) - alpha) = c0 + sum_n 1/(r'(w_n) (z - w_n)),
// where c0 = 1/(r(inf) - alpha) when deg p = deg q and c0 = 0 when r has a
// pole at infinity.
struct PartialFractionExpansion {
  Complex constant{0.0, 0.0};
  std::vector<Complex> poles;     // preimages w_n of alpha
  std::vector<Complex> residues;  // 1/r'(w_n)
  Complex eval(Complex z) const;
};

// Rational function r = p/q with deg p >= deg q >= 0, p and q coprime
// (no numerically common roots), q not identically zero. N = deg p is the
// degree of r as a map (generic fiber size).
class RationalFn {
 public:
  RationalFn(Poly p, Poly q, double coprime_tol = tol::coprime);

  static RationalFn from_poly(Poly p);
  // Finite Blaschke product prod_n (z - a_n)/(1 - conj(a_n) z) with
  // pairwise distinct zeros in the open unit disk.
  static RationalFn blaschke(const std::vector<Complex>& zeros);

  const Poly& p() const { return p_; }
  const Poly& q() const { return q_; }
  int N() const { return p_.degree(); }
  bool pole_at_infinity() const { return p_.degree() > q_.degree(); }
  // Value at infinity; only defined when deg p = deg q.
  Complex value_at_infinity() const;
  bool is_real(double tolerance = 1e-10) const;

  Complex eval(Complex z) const;          // throws PoleOfR at poles
  Complex derivative(Complex z) const;    // r'(z)
  Complex second_derivative(Complex z) const;
  bool near_pole(Complex z, double rel_tol = 1e-13) const;

  // The N solutions of r(w) = alpha, sorted by (Re, Im). Throws
  // DegenerateAlpha when fewer than N finite solutions exist or when the
  // solutions are not pairwise distinct (cluster tolerance
  // 1e-8 * (1 + max |w|)).
  std::vector<Complex> preimages(Complex alpha, const RootOptions& opts = {}) const;

  // True iff alpha has N pairwise distinct finite preimages with separation
  // above sep * (1 + max |w_n|).
  bool in_omega(Complex alpha, double sep = tol::omega_sep) const;

  // First regular value on the deterministic grid
  // 0, 1/2, -1/2, 1, -1, 3/2, ... (real points, then imaginary multiples).
  Complex default_alpha(double sep = tol::omega_sep) const;

  PartialFractionExpansion partial_fraction(Complex alpha) const;

 private:
  Poly p_, q_;
};

}  // namespace shiftspace

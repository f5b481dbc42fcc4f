#pragma once

#include <vector>

#include "shiftspace/analytic_fn.hpp"
#include "shiftspace/statespace.hpp"

namespace shiftspace {

// The generalized backward shift applied to an analytic f:
//   (R_alpha f)(z) = f(z)/(r(z) - alpha) - sum_n f(w_n)/(r'(w_n)(z - w_n)),
// over the N preimages w_n of alpha. The singularities at the w_n are
// removable; within switch_tol of a preimage the value is recovered by a
// fourth-order average of the regular formula on a small circle, and
// at_preimage() evaluates the exact limit with derivatives.
class ResolventApplication {
 public:
  ResolventApplication(RationalFn r, AnalyticFn f, Complex alpha,
                       double switch_tol = tol::resolvent_switch);

  CVec eval(Complex z) const;
  // Exact limit at w_m:
  //   f'(w_m)/r'(w_m) - f(w_m) r''(w_m)/(2 r'(w_m)^2)
  //   - sum_{n != m} f(w_n)/(r'(w_n)(w_m - w_n)).
  CVec at_preimage(int m) const;

  const std::vector<Complex>& preimages() const { return pf_.poles; }
  Complex alpha() const { return alpha_; }
  int dim() const { return f_.dim(); }
  // View as a black-box analytic function (for iterated application).
  AnalyticFn as_fn() const;

 private:
  CVec regular_eval(Complex z) const;

  RationalFn r_;
  AnalyticFn f_;
  Complex alpha_;
  double switch_tol_;
  PartialFractionExpansion pf_;
  std::vector<CVec> f_at_preimages_;
};

ResolventApplication apply_resolvent(const RationalFn& r, const AnalyticFn& f, Complex alpha,
                                     double switch_tol = tol::resolvent_switch);

// Classical one-variable backward shift (F(v) - F(alpha))/(v - alpha) with a
// derivative branch on the diagonal.
AnalyticFn classical_shift(const AnalyticFn& F, Complex alpha);

// f(z) = (Z(z) (x) I_p) F(r(z)); F must have dimension N * p.
AnalyticFn compose_state(const StateBasis& basis, const AnalyticFn& F);

struct ResidualReport {
  double max_residual = 0.0;  // |delta| / (1 + max(|lhs|, |rhs|))
  double max_absolute = 0.0;
  int samples_used = 0;
};

// (R_alpha - R_beta) f = (alpha - beta) R_alpha R_beta f on the samples.
ResidualReport check_resolvent_identity(const RationalFn& r, const AnalyticFn& f, Complex alpha,
                                        Complex beta, const std::vector<Complex>& samples);

// (R_alpha^{(r)} f)(z) = (Z(z) (x) I_p)(R_alpha F)(r(z)) for f = Z * F o r.
ResidualReport check_intertwining(const StateBasis& basis, const AnalyticFn& F, Complex alpha,
                                  const std::vector<Complex>& samples);

// f(z) = Z(z)^T / (a - r(z) b), an N-vector of eigenfunctions of R_alpha with
// eigenvalue b/(a - alpha b).
AnalyticFn eigenfunction(const StateBasis& basis, Complex a, Complex b);

struct EigenfunctionReport {
  Complex eigenvalue;  // b / (a - alpha b)
  double max_residual = 0.0;
  int samples_used = 0;
};
EigenfunctionReport check_eigenfunction(const StateBasis& basis, Complex a, Complex b,
                                        Complex alpha, const std::vector<Complex>& samples);

// Multiplication model z -> r(z) f(z) + (Z(z) (x) I_p) h_coeffs with
// f = Z * F o r; inverse of the resolvent up to the state-space correction.
AnalyticFn model_action(const StateBasis& basis, const AnalyticFn& F, const CVec& h_coeffs);

}  // namespace shiftspace

#pragma once

#include <optional>
#include <vector>

#include "shiftspace/statespace.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Validates J = J^* = J^{-1} (up to tolerance) and returns it unchanged.
CMat check_signature(const CMat& J, double tolerance = 1e-10);

struct XMatrixReport {
  CMat X;                        // Np x Np, complex-symmetric by construction
  Complex alpha_used;
  double symmetry_defect = 0.0;  // max |X - X^T|
  double imag_defect = 0.0;      // max |Im X|
  double min_singular = 0.0;
  double max_singular = 0.0;
};

// X(J, r) = sum_n (Z(w_n) (x) I_p)^T J (Z(w_n) (x) I_p) / r'(w_n) over the
// preimages w_n of alpha (default: first regular grid value). The result is
// independent of the choice of alpha; it transforms by congruence
// S^T X S under a change of basis Z -> Z S. Throws SingularX when the
// smallest singular value falls below 1e-12 times the largest.
XMatrixReport assoc_sym_matrix(const StateBasis& basis, const CMat& J,
                               std::optional<Complex> alpha = std::nullopt);

struct AlphaIndependenceReport {
  double max_deviation = 0.0;  // entrywise, against the first alpha
  std::vector<Complex> alphas_used;
};

AlphaIndependenceReport alpha_independence(const StateBasis& basis, const CMat& J,
                                           const std::vector<Complex>& alphas);

// Power moments h_n = sum_i w_i^n / p'(w_i) over the roots of p, n = 0..2N-2.
// h_n = 0 for n <= N-2 and h_{N-1} = 1/leading(p) when the roots are
// distinct; X(1, p) in the monomial basis is the Hankel matrix of these.
// Throws MultipleRoots when roots are not pairwise distinct.
std::vector<Complex> hankel_moments(const Poly& p);

// Closed form for a Blaschke product with pairwise distinct zeros, in the
// basis e_n(z) = 1/(1 - conj(a_n) z):
//   X_{uv} = sum_n 1/( r'(a_n) (1 - a_n conj(a_u)) (1 - a_n conj(a_v)) ).
CMat blaschke_X(const std::vector<Complex>& zeros);

struct SignatureFactorization {
  RMat Y;   // X = Y^T J0 Y
  RMat J0;  // diag(+1...,-1...), positives first
  int positives = 0;
  int negatives = 0;  // negative index of the quadratic form
};

// Factors a real symmetric invertible X through its eigendecomposition:
// Y = |L|^{1/2} Q^T with the positive eigenvalues ordered first. Throws
// NotRealRational if X has a material imaginary part or asymmetry, and
// SingularX if an eigenvalue is within 1e-10 of zero (relative).
SignatureFactorization factor_signature(const CMat& X, double tolerance = 1e-9);

}  // namespace shiftspace

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shiftspace/statespace.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Matrix-valued evaluator v -> M(v) and two-point kernel evaluator.
using MatrixFn = std::function<CMat(Complex)>;
using KernelFn = std::function<CMat(Complex, Complex)>;

// Denominator convention: Line uses -i(z - conj(w)), Circle uses 1 - z*conj(w).
enum class KernelDomain { Line, Circle };

// Finite-dimensional shift-invariant family of vector states: the columns of
// the frame (Z(z) (x) I_m) C (A - r(z)B)^{-1} span the space and P is the
// Hermitian Gram weight. Shapes: C is (m N) x M; A, B, P are M x M.
struct InvariantSubspaceData {
  CMat C;
  CMat A;
  CMat B;
  CMat P;
  int m = 1;

  int M() const { return static_cast<int>(A.rows()); }
  // Shape checks against state dimension N; P = P^* to 1e-12 and invertible;
  // A - vB invertible at at least one probe value (regular pencil).
  void validate(int N) const;
};

// Frame M(z) = (Z(z) (x) I_m) C (A - r(z)B)^{-1}, an m x M matrix. Throws
// SingularPencil when A - r(z)B is numerically singular.
CMat invariant_frame(const StateBasis& basis, const InvariantSubspaceData& data, Complex z);

// K(z, w) = M(z) P^{-1} M(w)^*, an m x m matrix; Hermitian at z = w.
CMat invariant_kernel(const StateBasis& basis, const InvariantSubspaceData& data, Complex z,
                      Complex w);

struct CovarianceReport {
  double max_residual = 0.0;  // |lhs - rhs| / (1 + max(|lhs|, |rhs|))
  int samples_used = 0;
};

// Shift covariance of the frame: applying the generalized backward shift
// R_alpha columnwise to M(z) equals M(z) B (A - alpha B)^{-1}.
CovarianceReport check_invariant_covariance(const StateBasis& basis,
                                            const InvariantSubspaceData& data, Complex alpha,
                                            const std::vector<Complex>& samples);

struct SteinSolution {
  CMat P;                 // Hermitian solution
  double residual = 0.0;  // max-entry residual of A*PA - B*PB - C*JC
  double hermiticity_defect = 0.0;
};

// Solves A^*PA - B^*PB = C^*JC by vectorizing the M^2-dimensional linear
// system. Throws SingularSteinOperator on eigenvalue resonance of the pencil.
SteinSolution solve_stein(const CMat& A, const CMat& B, const CMat& C, const CMat& J);

struct GridCheckReport {
  double max_residual = 0.0;
  int pairs = 0;
};

// Compares the invariant-subspace kernel against the Theta form
//   (Z (x) I_m) [J - Theta(r(z)) J Theta(r(w))^*] / (1 - r(z) conj(r(w))) (Z (x) I_m)^*
// over all ordered grid pairs. J and Theta values are (mN) x (mN). Pairs with
// a singular denominator or a pole of r are skipped, not thrown.
GridCheckReport theta_kernel_check(const StateBasis& basis, const InvariantSubspaceData& data,
                                   const CMat& J, const MatrixFn& Theta,
                                   const std::vector<Complex>& grid);

// (Z (x) I_p) [X^{-1} - Theta(r(z)) X Theta(r(w))^*] / (-i (r(z) - conj r(w))) (Z (x) I_p)^*
// X and Theta values are (Np) x (Np); the result is p x p. Throws
// DiagonalSingularity when the denominator is below 1e-12.
CMat line_theta_kernel(const StateBasis& basis, const CMat& X, const MatrixFn& Theta, Complex z,
                       Complex w);

// Same numerator over 1 - r(z) conj(r(w)).
CMat circle_theta_kernel(const StateBasis& basis, const CMat& X, const MatrixFn& Theta, Complex z,
                         Complex w);

// Additive split for Theta = Theta1 * Theta2 (pointwise product of values):
//   K_Theta(z,w) = K_Theta1(z,w)
//     + (Z (x) I_p) Theta1(r(z)) [X - Theta2(r(z)) X Theta2(r(w))^*] Theta1(r(w))^* (Z (x) I_p)^*
//       / denom
// holds pointwise for any invertible Theta1 value; the report records the max
// deviation over ordered grid pairs.
GridCheckReport theta_split_check(const StateBasis& basis, const CMat& X, const MatrixFn& Theta1,
                                  const MatrixFn& Theta2, KernelDomain domain,
                                  const std::vector<Complex>& grid);

// (Z (x) I_p) [X^{-1} - S(r(z)) S(r(w))^*] / (1 - r(z) conj(r(w))) (Z (x) I_p)^*
CMat s_kernel(const StateBasis& basis, const CMat& X, const MatrixFn& S, Complex z, Complex w);

// Raw two-frame kernel (no composition with r):
//   [E+(z) J E+(w)^* - E-(z) J E-(w)^*] / denom.
CMat epm_kernel(const MatrixFn& E_plus, const MatrixFn& E_minus, const CMat& J,
                KernelDomain domain, Complex z, Complex w);

// Composed variant: frames evaluated at r(.), denominator in r(z), r(w),
// sandwiched by Z (x) I_p.
CMat epm_kernel_composed(const StateBasis& basis, const MatrixFn& E_plus, const MatrixFn& E_minus,
                         const CMat& J, KernelDomain domain, Complex z, Complex w);

// Raw generalized-Nevanlinna kernel [N(z) - N(w)^*] / (z - conj(w)).
CMat lnspace_kernel(const MatrixFn& N, Complex z, Complex w);

// Composed: (Z (x) I_p) [ (N(r(z)) - N(r(w))^*) / (r(z) - conj r(w)) ] (Z (x) I_p)^*
// with N values of size (Np) x (Np).
CMat nevanlinna_kernel(const StateBasis& basis, const MatrixFn& N, Complex z, Complex w);

// Hardy-space analog Z(z) Z(w)^* / (-i (r(z) - conj r(w))): the composed
// Nevanlinna kernel of the constant N = (i/2) I. Positive semidefinite on
// grids where Im r > 0.
CMat hardy_kernel(const StateBasis& basis, Complex z, Complex w);

// Circle Hardy analog (Z (x) I_p) X^{-1} (Z (x) I_p)^* / (1 - r(z) conj r(w)).
CMat hardy_circle_kernel(const StateBasis& basis, const CMat& X, Complex z, Complex w);

// Recovers a Nevanlinna generator from a structured kernel:
//   N(z) = (z - conj(alpha)) K(z, alpha) - (alpha - conj(alpha))/2 * K(alpha, alpha),
// so that K(z, w) = (N(z) - N(w)^*) / (z - conj(w)) whenever K has that form.
MatrixFn nevanlinna_from_kernel(const KernelFn& K, Complex alpha);

// Two-frame split of a kernel about an anchor: F+ anchors at alpha, F- at the
// mirror point (conj(alpha) on the line, 1/conj(alpha) on the circle), both
// normalized by sqrt(2 Im alpha) resp. sqrt(1 - |alpha|^2):
//   line:   F+(z) = (z - conj a) K(z, a) / s,   F-(z) = (z - a) K(z, conj a) / s
//   circle: F+(z) = (1 - z conj a) K(z, a) / s, F-(z) = (z - a) K(z, 1/conj a) / s
// Reconstruction [F+ W+ F+(w)^* - F- W- F-(w)^*] / denom with W = K(anchor)^{-1}
// equals K whenever the kernel carries a full-rank two-frame structure.
struct DeBrangesSplit {
  KernelDomain domain{};
  Complex alpha;
  Complex mirror;
  MatrixFn F_plus;
  MatrixFn F_minus;
  CMat W_plus;   // K(alpha, alpha)^{-1}, Hermitized
  CMat W_minus;  // K(mirror, mirror)^{-1}, Hermitized
  MatrixFn E_plus;   // F+ * M+ with W+ = M+ J+ M+^*
  MatrixFn E_minus;  // F- * M- with W- = M- J- M-^*
  CMat J_plus;
  CMat J_minus;
  bool same_signature = false;

  CMat reconstruct(Complex z, Complex w) const;
};

// Requires Im alpha > 0 (line) or 0 < |alpha| < 1 (circle); throws
// RankDeficientAtAlpha when K at either anchor is numerically singular.
DeBrangesSplit de_branges_split(const KernelFn& K, Complex alpha, KernelDomain domain);

struct GramReport {
  CMat gram;         // Hermitized block Gram [K(z_i, z_j)]
  RVec eigenvalues;  // ascending
  int negatives = 0;
  int positives = 0;
  double hermitian_defect = 0.0;  // max |G - G^*| before Hermitizing
};

// Block Gram matrix of K over the grid; negatives counts eigenvalues below
// -neg_tol * max(1, |G|), a lower bound for the number of negative squares.
GramReport kernel_gram(const KernelFn& K, const std::vector<Complex>& grid,
                       double neg_tol = 1e-9);

// max over ordered grid pairs of |K(z,w) - K(w,z)^*|.
double hermitian_swap_defect(const KernelFn& K, const std::vector<Complex>& grid);

}  // namespace shiftspace

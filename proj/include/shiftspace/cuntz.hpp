#pragma once

#include <functional>
#include <vector>

#include "shiftspace/poly.hpp"
#include "shiftspace/representation.hpp"
#include "shiftspace/statespace.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Exact radix expansion of a polynomial f along a polynomial r of degree
// N >= 2: repeated Euclidean division produces digits c_j with deg c_j < N and
// f = sum_j c_j r^j. Regrouping by monomial gives the N components
//   F_n(w) = sum_j [c_j]_n w^j,   f(z) = sum_{n=0}^{N-1} z^n F_n(r(z)).
// This is the analysis map of the branch operators (S_n g)(z) = z^n g(r(z)).
std::vector<Poly> radix_components(const Poly& f, const Poly& r);

// Synthesis map: f = sum_n z^n components[n](r(z)), computed exactly.
// Throws DegreeOverflow when deg f would exceed max_degree.
Poly synthesize(const std::vector<Poly>& components, const Poly& r, int max_degree = 32);

// Relative defect of sum_k |f_k|^2 h(floor(k/N)) == sum_n sum_j |[F_n]_j|^2 h(j),
// the Parseval identity for r = z^N under the diagonal inner product induced
// by weights h on the component space (h empty means all weights 1).
double parseval_defect(const Poly& f, int N, const std::function<double(int)>& h = {});

struct CuntzReport {
  double completeness = 0.0;   // max coeff error of synthesize(analyze(f)) - f
  double orthogonality = 0.0;  // max coeff error of analyze(S_n g)_m - delta_nm g
  double norm_defect = 0.0;    // Parseval defect; only meaningful when checked
  bool norm_checked = false;   // true iff r is the pure power z^N
  int trials = 0;
};

// Exercises the exact polynomial path on random polynomials of degree
// max_degree with coefficients in the unit square.
CuntzReport verify_cuntz_polynomial(const Poly& r, int max_degree = 32,
                                    unsigned seed = 1, int trials = 8);

struct QuadratureCuntzReport {
  double completeness = 0.0;        // reconstruction residual of f itself
  double component_recovery = 0.0;  // analyze(e_n * probe(r))_m vs delta_nm probe
  int samples_used = 0;
};

// Exercises the contour-quadrature path for a general rational r: decomposes
// f and checks the reconstruction on `points`, then feeds each single-branch
// function e_n(z) * probe(r(z)) back through the decomposition and verifies
// that only component n survives.
QuadratureCuntzReport verify_cuntz_quadrature(const StateBasis& basis, const AnalyticFn& f,
                                              const std::vector<Complex>& points,
                                              const std::function<Complex(Complex)>& probe,
                                              int value_samples = 20, unsigned seed = 11);

// Max relative defect of the refinement identity
//   k(z, w) = (sum_n e_n(z) conj(e_n(w))) * k(r(z), r(w))
// over ordered pairs from `points` (points on poles of r are skipped).
double kernel_fixed_point_defect(const StateBasis& basis,
                                 const std::function<Complex(Complex, Complex)>& kernel,
                                 const std::vector<Complex>& points);

}  // namespace shiftspace

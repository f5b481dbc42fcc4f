#pragma once

#include <string>
#include <vector>

#include "shiftspace/analytic_fn.hpp"
#include "shiftspace/statespace.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Pairwise disjoint closed disks centered at the distinct zeros of the
// numerator of r, kept away from the poles of r, together with a certified
// radius rho: every point z with |r(z)| < rho lies strictly inside the union
// of the open disks. In particular, for |v| < rho all preimages of v are
// enclosed by the disk boundaries and no pole of r is.
struct DiskCover {
  std::vector<Complex> centers;
  std::vector<double> radii;
  double rho = 0.0;
  int shrink_steps = 0;  // times rho was scaled by 0.7 before certification

  bool contains(Complex z) const;
};

struct CoverOptions {
  int boundary_samples = 4096;  // samples per circle when minimizing |r|
  int grid_size = 201;          // certification grid points per axis
  int preimage_angles = 32;     // sampled arguments per preimage test ring
  int max_shrinks = 60;
};

DiskCover build_cover(const RationalFn& r, const CoverOptions& opts = {});

struct DecomposeOptions {
  int nodes = 2048;  // trapezoid nodes per disk boundary
  CoverOptions cover;
};

// Coefficient function of the representation f(z) = (Z(z) kron I_p) F(r(z)),
// computed by contour quadrature over the cover boundaries:
//   F(v) = (1/2 pi i) sum_l oint ((I-(s-a0)T)^{-1} b kron I_p) f(s) / (r(s)-v) ds.
// The integrand's poles inside the disks are exactly the preimages of v, so
// the integral equals sum_n ((I-(w_n-a0)T)^{-1} b kron I_p) f(w_n) / r'(w_n)
// and depends analytically on v for |v| < rho.
class Decomposition {
 public:
  Decomposition(StateBasis basis, AnalyticFn f, const DecomposeOptions& opts = {});

  const StateBasis& basis() const { return basis_; }
  const AnalyticFn& fn() const { return f_; }
  const DiskCover& cover() const { return cover_; }
  double rho() const { return cover_.rho; }
  int block_dim() const { return p_; }
  int dim() const { return basis_.N() * p_; }

  // F(v); throws EvalOutsideRho when |v| >= rho.
  CVec evalF(Complex v) const;

  // (Z(z) kron I_p) F(r(z)); throws EvalOutsideRho when |r(z)| >= rho.
  CVec reconstruct(Complex z) const;

  // Taylor coefficients of F at 0, read off a circle |v| = circle_frac * rho.
  std::vector<CVec> taylor_coeffs(int count, double circle_frac = 0.75,
                                  int circle_nodes = 1024) const;

  // F as a reusable function object (owns a copy of the quadrature data).
  AnalyticFn as_fn() const;

 private:
  StateBasis basis_;
  AnalyticFn f_;
  DiskCover cover_;
  int p_;
  std::vector<Complex> node_r_;   // r at each quadrature node
  std::vector<CVec> node_data_;   // weight * (mu(s) kron I_p) f(s) per node
};

Decomposition decompose(const StateBasis& basis, const AnalyticFn& f,
                        const DecomposeOptions& opts = {});

struct RoundtripReport {
  double max_residual = 0.0;  // max |f(z) - reconstruction(z)| / (1 + max |f|)
  double max_abs_f = 0.0;
  int samples_used = 0;
};

// Reconstruction error over the given points; points on poles of r or with
// |r(z)| > safety * rho are skipped and do not count as samples.
RoundtripReport check_roundtrip(const Decomposition& dec, const std::vector<Complex>& points,
                                double safety = 0.9);

struct InterpolationResult {
  CVec x;                          // solution coefficients: f = sum_n x_n e_n
  Eigen::RowVectorXcd functional;  // row c with c * x = gamma
  double residual = 0.0;           // |sum_n c_n f(w_n) - gamma| / (1 + |gamma|)
};

// Least-norm element f of the state space satisfying
//   sum_n coeffs_n * f(nodes_n) = gamma.
// Throws ZeroFunctional when the functional vanishes identically.
InterpolationResult multipoint_interpolate(const StateBasis& basis,
                                           const std::vector<Complex>& nodes,
                                           const std::vector<Complex>& coeffs, Complex gamma);

}  // namespace shiftspace

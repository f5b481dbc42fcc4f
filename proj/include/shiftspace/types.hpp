#pragma once

#include <complex>

#include <Eigen/Dense>

namespace shiftspace {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
// Relative threshold below which polynomial coefficients are treated as zero.
inline constexpr double coeff_trim = 1e-12;
// Minimum pairwise root distance for numerator/denominator coprimality.
inline constexpr double coprime = 1e-8;
// Pairwise preimage separation (relative to 1 + max |w_n|) required for a
// point to count as a regular value.
inline constexpr double omega_sep = 1e-8;
// Distance to a preimage below which resolvent evaluation switches to the
// removable-singularity branch.
inline constexpr double resolvent_switch = 1e-5;
// Step scale for central-difference derivatives of black-box functions.
inline constexpr double fd_step = 1e-6;
}  // namespace tol

}  // namespace shiftspace

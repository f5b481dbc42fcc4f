#pragma once

#include <stdexcept>
#include <string>

namespace shiftspace {

// Base class for all toolkit errors so callers can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Root finder failed to reach the requested tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

// p and q share (numerically) a common root.
struct NotCoprime : Error {
  using Error::Error;
};

// deg p < deg q or q identically zero.
struct InvalidRational : Error {
  using Error::Error;
};

// alpha has fewer than N distinct finite preimages.
struct DegenerateAlpha : Error {
  using Error::Error;
};

// Evaluation requested at (or too close to) a pole of r.
struct PoleOfR : Error {
  using Error::Error;
};

// Realization at center 0 requested but q(0) = 0.
struct PoleAtOrigin : Error {
  using Error::Error;
};

// Operation requires a real rational function.
struct NotRealRational : Error {
  using Error::Error;
};

// Matrix is not a valid signature matrix (J = J^* = J^{-1} up to tolerance).
struct NotSignature : Error {
  using Error::Error;
};

// Distinct roots required but a multiple root was detected.
struct MultipleRoots : Error {
  using Error::Error;
};

// Blaschke constructor requires pairwise distinct zeros inside the disk.
struct ZerosNotDistinct : Error {
  using Error::Error;
};

// Associated symmetric matrix is numerically singular.
struct SingularX : Error {
  using Error::Error;
};

// Disk-cover construction could not certify the level-set condition.
struct CoverConstructionFailed : Error {
  using Error::Error;
};

// Contour quadrature failed a self-consistency check.
struct QuadratureDivergence : Error {
  using Error::Error;
};

// Taylor-coefficient query outside the certified disk of analyticity.
struct EvalOutsideRho : Error {
  using Error::Error;
};

// Truncated-space operation would exceed the configured degree cap.
struct DegreeOverflow : Error {
  using Error::Error;
};

// A - r(z)B (or A - alpha B) is singular where invertibility is required.
struct SingularPencil : Error {
  using Error::Error;
};

// Stein operator P -> A*PA - B*PB is numerically singular.
struct SingularSteinOperator : Error {
  using Error::Error;
};

// Kernel block K(alpha, alpha) (or its inverse) is rank deficient.
struct RankDeficientAtAlpha : Error {
  using Error::Error;
};

// Interpolation functional has zero norm (c c* = 0).
struct ZeroFunctional : Error {
  using Error::Error;
};

// Kernel evaluated on (or too close to) the singular diagonal set.
struct DiagonalSingularity : Error {
  using Error::Error;
};

}  // namespace shiftspace

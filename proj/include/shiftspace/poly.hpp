#pragma once

#include <utility>
#include <vector>

#include "shiftspace/types.hpp"

namespace shiftspace {

// Dense univariate polynomial with complex coefficients, ascending order
// (coeffs[k] multiplies z^k). Trailing coefficients below a relative
// tolerance are trimmed on construction, so degree() is meaningful.
class Poly {
 public:
  Poly() = default;  // zero polynomial
  explicit Poly(std::vector<Complex> coeffs, double trim_tol = tol::coeff_trim);

  static Poly monomial(int degree, Complex c = Complex{1.0, 0.0});
  static Poly from_roots(const std::vector<Complex>& roots,
                         Complex leading = Complex{1.0, 0.0});

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const;
  // Largest coefficient magnitude (0 for the zero polynomial).
  double scale() const;
  bool is_real(double tolerance = 1e-12) const;

  Complex eval(Complex z) const;  // Horner
  Poly derivative() const;
  // Taylor shift: returns s with s(u) = p(a + u).
  Poly shifted(Complex a) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex c) const;
  Poly operator-() const;

  // Euclidean division: *this = d * first + second, deg second < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const;

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

struct RootOptions {
  int max_iterations = 400;
  // Convergence: max Aberth update below tol * (1 + |root|).
  double tolerance = 1e-13;
  // Relative threshold for stripping roots at the origin up front.
  double origin_strip_tol = tol::coeff_trim;
};

// All complex roots of p (with multiplicity, so exactly deg p entries),
// computed by Aberth-Ehrlich simultaneous iteration followed by Newton
// polishing of simple roots. Deterministic ordering: ascending by
// (Re, Im). Throws NonConvergence if the iteration stalls.
std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opts = {});

// Groups a root list into clusters whose members lie within
// cluster_tol * (1 + max |root|) of each other; returns (representative,
// multiplicity) pairs, representative = cluster mean, deterministic order.
struct RootCluster {
  Complex center;
  int multiplicity;
};
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double cluster_tol = 1e-6);

}  // namespace shiftspace

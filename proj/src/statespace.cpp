#include "shiftspace/statespace.hpp"

#include <cmath>

#include "shiftspace/errors.hpp"

namespace shiftspace {

Complex select_center(const RationalFn& r) {
  const Poly& q = r.q();
  const double floor = 1e-2 * std::max(q.scale(), 1e-300);
  if (std::abs(q.eval({0.0, 0.0})) > floor) return {0.0, 0.0};
  for (int k = 1; k < 400; ++k) {
    const double mag = 0.5 * ((k + 1) / 2);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const Complex a0{sign * mag, 0.0};
    if (std::abs(q.eval(a0)) > floor) return a0;
  }
  throw PoleAtOrigin("no regular center found on the deterministic grid");
}

Realization realize(const RationalFn& r) {
  const Complex q0 = r.q().eval({0.0, 0.0});
  if (std::abs(q0) <= 1e-12 * std::max(r.q().scale(), 1e-300)) {
    throw PoleAtOrigin("q(0) = 0; realize at a shifted center instead");
  }
  return realize_at(r, {0.0, 0.0});
}

Realization realize_at(const RationalFn& r, Complex center) {
  const int N = r.N();
  const Poly ps = r.p().shifted(center);
  const Poly qs = r.q().shifted(center);
  const Complex qa = qs.coeff(0);  // q(center)
  if (std::abs(qa) <= 1e-12 * std::max(r.q().scale(), 1e-300)) {
    throw PoleAtOrigin("center is a pole of r");
  }
  const Complex pa = ps.coeff(0);  // p(center)

  Realization out;
  out.center = center;
  out.d = pa / qa;

  // q_hat(u) = q(center + u)/q(center) drives the companion structure:
  // first column = -q_hat coefficients 1..N, superdiagonal = 1. Then
  // det(I - uT) = q_hat(u) and G (I - uT)^{-1} = (1, u, ..., u^{N-1})/q_hat.
  out.T = CMat::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i) out.T(i, i + 1) = 1.0;
  for (int i = 0; i < N; ++i) out.T(i, 0) = -qs.coeff(i + 1) / qa;

  out.G = Eigen::RowVectorXcd::Zero(N);
  out.G(0) = 1.0;

  // b_n = coefficient of u^{n-1} in [p(a0+u) q(a0) - p(a0) q(a0+u)]/(u q(a0)^2).
  const Poly num = ps * qa - qs * pa;
  // num vanishes at u = 0; shift the coefficients down by one.
  out.b = CVec::Zero(N);
  for (int n = 0; n < N; ++n) out.b(n) = num.coeff(n + 1) / (qa * qa);
  return out;
}

StateBasis::StateBasis(RationalFn r, Realization real, std::string label)
    : r_(std::move(r)), real_(std::move(real)), label_(std::move(label)) {}

StateBasis StateBasis::canonical(const RationalFn& r) {
  const Complex center = select_center(r);
  return StateBasis(r, realize_at(r, center), "canonical");
}

StateBasis StateBasis::from_numerators(const RationalFn& r, const std::vector<Poly>& numerators,
                                       std::string label) {
  const int N = r.N();
  if (static_cast<int>(numerators.size()) != N) {
    throw Error("expected exactly N basis numerators");
  }
  const Complex center = select_center(r);
  const Complex qa = r.q().eval(center);
  // Column j of A holds the coefficients of m_j(center + u)/q(center); then
  // target basis = canonical basis * A.
  CMat A = CMat::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    if (numerators[static_cast<size_t>(j)].degree() > N - 1) {
      throw Error("basis numerator degree exceeds N - 1");
    }
    const Poly ms = numerators[static_cast<size_t>(j)].shifted(center);
    for (int n = 0; n < N; ++n) A(n, j) = ms.coeff(n) / qa;
  }
  return StateBasis(r, realize_at(r, center), "canonical").with_change_of_basis(A, std::move(label));
}

StateBasis StateBasis::laurent(const RationalFn& r) {
  const Poly& q = r.q();
  const int k = q.degree();
  const int N = r.N();
  for (int j = 0; j < k; ++j) {
    if (std::abs(q.coeff(j)) > 1e-12 * q.scale()) {
      throw Error("laurent basis requires a monomial denominator c z^k");
    }
  }
  if (k == 0) return canonical(r);
  const Complex c = q.leading();
  // e = (1, z, ..., z^{N-1-k}, 1/z, ..., 1/z^k): numerators over q = c z^k.
  std::vector<Poly> nums;
  for (int j = 0; j <= N - 1 - k; ++j) nums.push_back(Poly::monomial(k + j, c));
  for (int j = 1; j <= k; ++j) nums.push_back(Poly::monomial(k - j, c));
  return from_numerators(r, nums, "laurent");
}

StateBasis StateBasis::blaschke(const std::vector<Complex>& zeros) {
  RationalFn r = RationalFn::blaschke(zeros);
  const int N = r.N();

  Realization real;
  real.center = {0.0, 0.0};
  real.d = r.eval({0.0, 0.0});
  real.G = Eigen::RowVectorXcd::Ones(N);
  real.T = CMat::Zero(N, N);
  for (int n = 0; n < N; ++n) real.T(n, n) = std::conj(zeros[static_cast<size_t>(n)]);

  // b solves the exact coefficient identity
  //   p(z) - d q(z) = sum_n b_n z prod_{m != n} (1 - conj(a_m) z),
  // matching coefficients of z^1..z^N (the z^0 coefficient is 0 on both sides).
  CMat B = CMat::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    Poly col = Poly::monomial(1);
    for (int m = 0; m < N; ++m) {
      if (m == n) continue;
      col = col * Poly{{Complex{1.0, 0.0}, -std::conj(zeros[static_cast<size_t>(m)])}};
    }
    for (int row = 0; row < N; ++row) B(row, n) = col.coeff(row + 1);
  }
  const Poly rhs = r.p() - r.q() * real.d;
  CVec rhsv = CVec::Zero(N);
  for (int row = 0; row < N; ++row) rhsv(row) = rhs.coeff(row + 1);
  real.b = B.partialPivLu().solve(rhsv);

  return StateBasis(std::move(r), std::move(real), "blaschke");
}

StateBasis StateBasis::with_change_of_basis(const CMat& S, std::string label) const {
  const int N = real_.N();
  if (S.rows() != N || S.cols() != N) throw Error("change of basis must be N x N");
  Eigen::FullPivLU<CMat> lu(S);
  if (!lu.isInvertible()) throw Error("change of basis must be invertible");
  Realization out;
  out.center = real_.center;
  out.d = real_.d;
  out.G = real_.G * S;
  out.T = lu.solve(real_.T * S);
  out.b = lu.solve(real_.b);
  return StateBasis(r_, std::move(out), std::move(label));
}

Eigen::RowVectorXcd StateBasis::eval_Z(Complex z) const {
  if (r_.near_pole(z)) throw PoleOfR("Z(z) evaluated on the pole set of r");
  const int N = real_.N();
  const Complex u = z - real_.center;
  const CMat M = CMat::Identity(N, N) - u * real_.T;
  // Z = G M^{-1}  <=>  M^T Z^T = G^T.
  const CVec zt = M.transpose().partialPivLu().solve(real_.G.transpose());
  return zt.transpose();
}

Complex StateBasis::divided_difference(Complex z, Complex w) const {
  const int N = real_.N();
  const Complex v = w - real_.center;
  const CMat M = CMat::Identity(N, N) - v * real_.T;
  const CVec x = M.partialPivLu().solve(real_.b);
  return (eval_Z(z) * x)(0);
}

Complex StateBasis::sum_formula(const CVec& coeffs, Complex z, Complex alpha) const {
  const auto pf = r_.partial_fraction(alpha);
  Complex acc{0.0, 0.0};
  for (size_t n = 0; n < pf.poles.size(); ++n) {
    const Complex fw = (eval_Z(pf.poles[n]) * coeffs)(0);
    acc += fw * pf.residues[n] / (z - pf.poles[n]);
  }
  return acc;
}

bool StateBasis::is_real(double tolerance) const {
  auto real_enough = [&](double im, double scale) { return std::abs(im) <= tolerance * (1.0 + scale); };
  if (!real_enough(real_.d.imag(), std::abs(real_.d))) return false;
  if (!real_enough(real_.center.imag(), std::abs(real_.center))) return false;
  for (int i = 0; i < real_.N(); ++i) {
    if (!real_enough(real_.G(i).imag(), std::abs(real_.G(i)))) return false;
    if (!real_enough(real_.b(i).imag(), std::abs(real_.b(i)))) return false;
    for (int j = 0; j < real_.N(); ++j) {
      if (!real_enough(real_.T(i, j).imag(), std::abs(real_.T(i, j)))) return false;
    }
  }
  return true;
}

}  // namespace shiftspace

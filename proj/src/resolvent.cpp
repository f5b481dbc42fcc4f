#include "shiftspace/resolvent.hpp"

#include <cmath>
#include <limits>

#include "shiftspace/errors.hpp"
#include "shiftspace/utils.hpp"

namespace shiftspace {

ResolventApplication::ResolventApplication(RationalFn r, AnalyticFn f, Complex alpha,
                                           double switch_tol)
    : r_(std::move(r)), f_(std::move(f)), alpha_(alpha), switch_tol_(switch_tol) {
  pf_ = r_.partial_fraction(alpha_);
  f_at_preimages_.reserve(pf_.poles.size());
  for (const auto& w : pf_.poles) f_at_preimages_.push_back(f_(w));
}

CVec ResolventApplication::regular_eval(Complex z) const {
  // 1/(r(z) - alpha) = q(z)/(p(z) - alpha q(z)) stays finite across the pole
  // set of r, so the first term needs no special casing there.
  const Complex inv = r_.q().eval(z) / (r_.p().eval(z) - alpha_ * r_.q().eval(z));
  CVec acc = f_(z) * inv;
  for (size_t n = 0; n < pf_.poles.size(); ++n) {
    acc -= f_at_preimages_[n] * (pf_.residues[n] / (z - pf_.poles[n]));
  }
  return acc;
}

CVec ResolventApplication::eval(Complex z) const {
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& w : pf_.poles) dist = std::min(dist, std::abs(z - w));
  if (dist > switch_tol_) return regular_eval(z);
  // Removable singularity: fourth-order circle average of the regular branch.
  const double h = 1e-3 * (1.0 + std::abs(z));
  CVec acc = CVec::Zero(f_.dim());
  const Complex steps[4] = {{h, 0.0}, {0.0, h}, {-h, 0.0}, {0.0, -h}};
  for (const auto& s : steps) acc += regular_eval(z + s);
  return acc / 4.0;
}

CVec ResolventApplication::at_preimage(int m) const {
  const Complex wm = pf_.poles[static_cast<size_t>(m)];
  const Complex rp = 1.0 / pf_.residues[static_cast<size_t>(m)];  // r'(w_m)
  const Complex rpp = r_.second_derivative(wm);
  CVec acc = f_.derivative(wm) / rp - f_at_preimages_[static_cast<size_t>(m)] * (rpp / (2.0 * rp * rp));
  for (size_t n = 0; n < pf_.poles.size(); ++n) {
    if (static_cast<int>(n) == m) continue;
    acc -= f_at_preimages_[n] * (pf_.residues[n] / (wm - pf_.poles[n]));
  }
  return acc;
}

AnalyticFn ResolventApplication::as_fn() const {
  return AnalyticFn(f_.dim(), [self = *this](Complex z) { return self.eval(z); });
}

ResolventApplication apply_resolvent(const RationalFn& r, const AnalyticFn& f, Complex alpha,
                                     double switch_tol) {
  return ResolventApplication(r, f, alpha, switch_tol);
}

AnalyticFn classical_shift(const AnalyticFn& F, Complex alpha) {
  const CVec Fa = F(alpha);
  return AnalyticFn(F.dim(), [F, alpha, Fa](Complex v) -> CVec {
    if (std::abs(v - alpha) <= 1e-7 * (1.0 + std::abs(alpha))) {
      return F.derivative((v + alpha) / 2.0);
    }
    return (F(v) - Fa) / (v - alpha);
  });
}

AnalyticFn compose_state(const StateBasis& basis, const AnalyticFn& F) {
  const int N = basis.N();
  if (F.dim() % N != 0) throw Error("coefficient function dimension must be N * p");
  const int p = F.dim() / N;
  return AnalyticFn(p, [basis, F, p](Complex z) -> CVec {
    const auto Z = basis.eval_Z(z);
    return kron_row(Z, p) * F(basis.r().eval(z));
  });
}

ResidualReport check_resolvent_identity(const RationalFn& r, const AnalyticFn& f, Complex alpha,
                                        Complex beta, const std::vector<Complex>& samples) {
  auto Rb = apply_resolvent(r, f, beta);
  auto Ra = apply_resolvent(r, f, alpha);
  auto RaRb = apply_resolvent(r, Rb.as_fn(), alpha);
  ResidualReport report;
  for (const auto& z : samples) {
    const CVec lhs = Ra.eval(z) - Rb.eval(z);
    const CVec rhs = (alpha - beta) * RaRb.eval(z);
    const double delta = (lhs - rhs).norm();
    const double scale = 1.0 + std::max(lhs.norm(), rhs.norm());
    report.max_absolute = std::max(report.max_absolute, delta);
    report.max_residual = std::max(report.max_residual, delta / scale);
    ++report.samples_used;
  }
  return report;
}

ResidualReport check_intertwining(const StateBasis& basis, const AnalyticFn& F, Complex alpha,
                                  const std::vector<Complex>& samples) {
  const int N = basis.N();
  const int p = F.dim() / N;
  const AnalyticFn f = compose_state(basis, F);
  auto Rf = apply_resolvent(basis.r(), f, alpha);
  const AnalyticFn RF = classical_shift(F, alpha);
  ResidualReport report;
  for (const auto& z : samples) {
    const CVec lhs = Rf.eval(z);
    const CVec rhs = kron_row(basis.eval_Z(z), p) * RF(basis.r().eval(z));
    const double delta = (lhs - rhs).norm();
    const double scale = 1.0 + std::max(lhs.norm(), rhs.norm());
    report.max_absolute = std::max(report.max_absolute, delta);
    report.max_residual = std::max(report.max_residual, delta / scale);
    ++report.samples_used;
  }
  return report;
}

AnalyticFn eigenfunction(const StateBasis& basis, Complex a, Complex b) {
  if (std::abs(a) == 0.0 && std::abs(b) == 0.0) {
    throw SingularPencil("eigenfunction requires (a, b) != (0, 0)");
  }
  return AnalyticFn(basis.N(), [basis, a, b](Complex z) -> CVec {
    const Complex denom = a - basis.r().eval(z) * b;
    if (std::abs(denom) < 1e-14 * (1.0 + std::abs(a))) {
      throw SingularPencil("a - r(z) b vanishes at the evaluation point");
    }
    return basis.eval_Z(z).transpose() / denom;
  });
}

EigenfunctionReport check_eigenfunction(const StateBasis& basis, Complex a, Complex b,
                                        Complex alpha, const std::vector<Complex>& samples) {
  const Complex denom = a - alpha * b;
  if (std::abs(denom) < 1e-14 * (1.0 + std::abs(a) + std::abs(alpha * b))) {
    throw SingularPencil("a - alpha b = 0: eigenvalue undefined");
  }
  EigenfunctionReport report;
  report.eigenvalue = b / denom;
  const AnalyticFn f = eigenfunction(basis, a, b);
  auto Rf = apply_resolvent(basis.r(), f, alpha);
  for (const auto& z : samples) {
    const CVec lhs = Rf.eval(z);
    const CVec rhs = report.eigenvalue * f(z);
    const double delta = (lhs - rhs).norm();
    report.max_residual = std::max(report.max_residual, delta / (1.0 + rhs.norm()));
    ++report.samples_used;
  }
  return report;
}

AnalyticFn model_action(const StateBasis& basis, const AnalyticFn& F, const CVec& h_coeffs) {
  const int N = basis.N();
  if (F.dim() % N != 0) throw Error("coefficient function dimension must be N * p");
  const int p = F.dim() / N;
  if (h_coeffs.size() != F.dim()) throw Error("h coefficients must have dimension N * p");
  const AnalyticFn f = compose_state(basis, F);
  return AnalyticFn(p, [basis, f, h_coeffs, p](Complex z) -> CVec {
    return basis.r().eval(z) * f(z) + kron_row(basis.eval_Z(z), p) * h_coeffs;
  });
}

}  // namespace shiftspace

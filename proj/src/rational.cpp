#include "shiftspace/rational.hpp"

#include <algorithm>
#include <cmath>

#include "shiftspace/errors.hpp"

namespace shiftspace {

Complex PartialFractionExpansion::eval(Complex z) const {
  Complex acc = constant;
  for (size_t n = 0; n < poles.size(); ++n) {
    acc += residues[n] / (z - poles[n]);
  }
  return acc;
}

RationalFn::RationalFn(Poly p, Poly q, double coprime_tol)
    : p_(std::move(p)), q_(std::move(q)) {
  if (q_.is_zero()) throw InvalidRational("denominator is identically zero");
  if (p_.is_zero()) throw InvalidRational("numerator is identically zero");
  if (p_.degree() < q_.degree()) {
    throw InvalidRational("deg p < deg q violates the standing hypothesis");
  }
  if (p_.degree() < 1) {
    throw InvalidRational("constant r has no state space");
  }
  if (q_.degree() >= 1) {
    const auto proots = poly_roots(p_);
    const auto qroots = poly_roots(q_);
    double big = 0.0;
    for (const auto& w : proots) big = std::max(big, std::abs(w));
    for (const auto& w : qroots) big = std::max(big, std::abs(w));
    const double cut = coprime_tol * (1.0 + big);
    for (const auto& a : proots) {
      for (const auto& b : qroots) {
        if (std::abs(a - b) <= cut) {
          throw NotCoprime("numerator and denominator share a root");
        }
      }
    }
  }
}

RationalFn RationalFn::from_poly(Poly p) {
  return RationalFn(std::move(p), Poly(std::vector<Complex>{{1.0, 0.0}}));
}

RationalFn RationalFn::blaschke(const std::vector<Complex>& zeros) {
  if (zeros.empty()) throw InvalidRational("empty Blaschke zero list");
  double big = 0.0;
  for (const auto& a : zeros) {
    if (std::abs(a) >= 1.0) {
      throw InvalidRational("Blaschke zeros must lie in the open unit disk");
    }
    big = std::max(big, std::abs(a));
  }
  for (size_t i = 0; i < zeros.size(); ++i) {
    for (size_t j = i + 1; j < zeros.size(); ++j) {
      if (std::abs(zeros[i] - zeros[j]) <= 1e-8 * (1.0 + big)) {
        throw ZerosNotDistinct("Blaschke zeros must be pairwise distinct");
      }
    }
  }
  Poly p = Poly::from_roots(zeros);
  Poly q{std::vector<Complex>{{1.0, 0.0}}};
  for (const auto& a : zeros) {
    q = q * Poly{std::vector<Complex>{{1.0, 0.0}, -std::conj(a)}};
  }
  return RationalFn(std::move(p), std::move(q));
}

Complex RationalFn::value_at_infinity() const {
  if (pole_at_infinity()) throw PoleOfR("r has a pole at infinity");
  return p_.leading() / q_.leading();
}

bool RationalFn::is_real(double tolerance) const {
  // p/q is real iff p and q are real after dividing by a common phase; use
  // the phase of the leading denominator coefficient.
  const Complex phase = q_.leading() / std::abs(q_.leading());
  return (p_ * (1.0 / phase)).is_real(tolerance) &&
         (q_ * (1.0 / phase)).is_real(tolerance);
}

bool RationalFn::near_pole(Complex z, double rel_tol) const {
  // Compare |q(z)| against a coefficient-scale bound at |z|.
  const double mag = q_.scale() * std::pow(1.0 + std::abs(z), q_.degree());
  return std::abs(q_.eval(z)) <= rel_tol * std::max(mag, 1e-300);
}

Complex RationalFn::eval(Complex z) const {
  const Complex qv = q_.eval(z);
  if (qv == Complex{0.0, 0.0}) throw PoleOfR("evaluation at a pole of r");
  return p_.eval(z) / qv;
}

Complex RationalFn::derivative(Complex z) const {
  const Complex qv = q_.eval(z);
  if (qv == Complex{0.0, 0.0}) throw PoleOfR("derivative at a pole of r");
  const Complex pv = p_.eval(z);
  const Complex dp = p_.derivative().eval(z);
  const Complex dq = q_.derivative().eval(z);
  return (dp * qv - pv * dq) / (qv * qv);
}

Complex RationalFn::second_derivative(Complex z) const {
  const Complex qv = q_.eval(z);
  if (qv == Complex{0.0, 0.0}) throw PoleOfR("derivative at a pole of r");
  // (p/q)'' = (p''q^2 - 2p'q'q + 2p q'^2 - p q q'') / q^3
  const Complex pv = p_.eval(z);
  const Complex dp = p_.derivative().eval(z);
  const Complex ddp = p_.derivative().derivative().eval(z);
  const Complex dq = q_.derivative().eval(z);
  const Complex ddq = q_.derivative().derivative().eval(z);
  return (ddp * qv * qv - 2.0 * dp * dq * qv + 2.0 * pv * dq * dq - pv * qv * ddq) /
         (qv * qv * qv);
}

std::vector<Complex> RationalFn::preimages(Complex alpha, const RootOptions& opts) const {
  const Poly shifted = p_ - q_ * alpha;
  if (shifted.degree() < N()) {
    throw DegenerateAlpha("leading cancellation: fewer than N finite preimages");
  }
  auto roots = poly_roots(shifted, opts);
  double big = 0.0;
  for (const auto& w : roots) big = std::max(big, std::abs(w));
  const double cut = 1e-8 * (1.0 + big);
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) <= cut) {
        throw DegenerateAlpha("preimages of alpha are not pairwise distinct");
      }
    }
  }
  return roots;
}

bool RationalFn::in_omega(Complex alpha, double sep) const {
  std::vector<Complex> roots;
  try {
    roots = preimages(alpha);
  } catch (const Error&) {
    return false;
  }
  double big = 0.0;
  for (const auto& w : roots) big = std::max(big, std::abs(w));
  const double cut = sep * (1.0 + big);
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) <= cut) return false;
    }
  }
  return true;
}

Complex RationalFn::default_alpha(double sep) const {
  for (int k = 0; k < 200; ++k) {
    const double mag = 0.5 * ((k + 1) / 2);
    std::vector<Complex> candidates;
    if (k == 0) {
      candidates.push_back({0.0, 0.0});
    } else if (k % 2 == 1) {
      candidates.push_back({mag, 0.0});
      candidates.push_back({-mag, 0.0});
      candidates.push_back({0.0, mag});
      candidates.push_back({0.0, -mag});
    } else {
      continue;
    }
    for (const auto& a : candidates) {
      if (in_omega(a, sep)) return a;
    }
  }
  throw DegenerateAlpha("no regular value found on the deterministic grid");
}

PartialFractionExpansion RationalFn::partial_fraction(Complex alpha) const {
  PartialFractionExpansion out;
  out.poles = preimages(alpha);
  out.constant = pole_at_infinity() ? Complex{0.0, 0.0}
                                    : 1.0 / (value_at_infinity() - alpha);
  const Poly dp = p_.derivative();
  const Poly dq = q_.derivative();
  out.residues.reserve(out.poles.size());
  for (const auto& w : out.poles) {
    // At a preimage, p(w) = alpha q(w), so r'(w) = (p'(w) - alpha q'(w))/q(w).
    const Complex rp = (dp.eval(w) - alpha * dq.eval(w)) / q_.eval(w);
    out.residues.push_back(1.0 / rp);
  }
  return out;
}

}  // namespace shiftspace

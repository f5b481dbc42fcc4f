#pragma once

#include <functional>
#include <utility>

#include "shiftspace/poly.hpp"
#include "shiftspace/rational.hpp"
#include "shiftspace/types.hpp"

namespace shiftspace {

// Type-erased C^p valued analytic function. Derivatives use a caller-supplied
// exact rule when available and a central difference with step
// 1e-6 * (1 + |z|) otherwise.
class AnalyticFn {
 public:
  using Eval = std::function<CVec(Complex)>;

  AnalyticFn(int dim, Eval eval) : dim_(dim), eval_(std::move(eval)) {}
  AnalyticFn(int dim, Eval eval, Eval deriv)
      : dim_(dim), eval_(std::move(eval)), deriv_(std::move(deriv)) {}

  static AnalyticFn scalar(std::function<Complex(Complex)> f) {
    return AnalyticFn(1, [f = std::move(f)](Complex z) {
      CVec v(1);
      v(0) = f(z);
      return v;
    });
  }

  static AnalyticFn scalar_with_derivative(std::function<Complex(Complex)> f,
                                           std::function<Complex(Complex)> df) {
    return AnalyticFn(
        1,
        [f = std::move(f)](Complex z) {
          CVec v(1);
          v(0) = f(z);
          return v;
        },
        [df = std::move(df)](Complex z) {
          CVec v(1);
          v(0) = df(z);
          return v;
        });
  }

  static AnalyticFn from_poly(const Poly& p) {
    return scalar_with_derivative([p](Complex z) { return p.eval(z); },
                                  [d = p.derivative()](Complex z) { return d.eval(z); });
  }

  static AnalyticFn from_rational(const RationalFn& r) {
    return scalar_with_derivative([r](Complex z) { return r.eval(z); },
                                  [r](Complex z) { return r.derivative(z); });
  }

  static AnalyticFn constant(CVec value) {
    const int dim = static_cast<int>(value.size());
    return AnalyticFn(
        dim, [value = std::move(value)](Complex) { return value; },
        [dim](Complex) { return CVec::Zero(dim).eval(); });
  }

  int dim() const { return dim_; }
  bool has_exact_derivative() const { return static_cast<bool>(deriv_); }

  CVec operator()(Complex z) const { return eval_(z); }

  CVec derivative(Complex z) const {
    if (deriv_) return deriv_(z);
    const double h = tol::fd_step * (1.0 + std::abs(z));
    return (eval_(z + h) - eval_(z - h)) / (2.0 * h);
  }

 private:
  int dim_;
  Eval eval_;
  Eval deriv_;
};

}  // namespace shiftspace

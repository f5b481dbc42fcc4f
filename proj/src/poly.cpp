#include "shiftspace/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "shiftspace/errors.hpp"

namespace shiftspace {

namespace {

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Poly::Poly(std::vector<Complex> coeffs, double trim_tol) : coeffs_(std::move(coeffs)) {
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double cut = trim_tol * scale;
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
  if (coeffs_.size() == 1 && std::abs(coeffs_[0]) == 0.0) coeffs_.clear();
}

Poly Poly::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<size_t>(degree) + 1, Complex{0.0, 0.0});
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(const std::vector<Complex>& roots, Complex leading) {
  std::vector<Complex> v{leading};
  for (const auto& r : roots) {
    std::vector<Complex> next(v.size() + 1, Complex{0.0, 0.0});
    for (size_t k = 0; k < v.size(); ++k) {
      next[k + 1] += v[k];
      next[k] -= r * v[k];
    }
    v = std::move(next);
  }
  return Poly(std::move(v));
}

Complex Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
  return coeffs_[static_cast<size_t>(k)];
}

Complex Poly::leading() const {
  return coeffs_.empty() ? Complex{0.0, 0.0} : coeffs_.back();
}

double Poly::scale() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

bool Poly::is_real(double tolerance) const {
  const double cut = tolerance * std::max(1.0, scale());
  for (const auto& c : coeffs_) {
    if (std::abs(c.imag()) > cut) return false;
  }
  return true;
}

Complex Poly::eval(Complex z) const {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  }
  return Poly(std::move(d));
}

Poly Poly::shifted(Complex a) const {
  // Horner in the shifted variable: s(u) = p(a + u).
  std::vector<Complex> s;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    // s := s * (u + a) + c
    std::vector<Complex> next(s.size() + 1, Complex{0.0, 0.0});
    for (size_t k = 0; k < s.size(); ++k) {
      next[k + 1] += s[k];
      next[k] += a * s[k];
    }
    if (next.empty()) next.resize(1, Complex{0.0, 0.0});
    next[0] += *it;
    s = std::move(next);
  }
  return Poly(std::move(s), 0.0);
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Complex> v(std::max(coeffs_.size(), o.coeffs_.size()), Complex{0.0, 0.0});
  for (size_t k = 0; k < coeffs_.size(); ++k) v[k] += coeffs_[k];
  for (size_t k = 0; k < o.coeffs_.size(); ++k) v[k] += o.coeffs_[k];
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Complex> v = coeffs_;
  for (auto& c : v) c = -c;
  return Poly(std::move(v), 0.0);
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Complex> v(coeffs_.size() + o.coeffs_.size() - 1, Complex{0.0, 0.0});
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return Poly(std::move(v));
}

Poly Poly::operator*(Complex c) const {
  std::vector<Complex> v = coeffs_;
  for (auto& x : v) x *= c;
  return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(), *this};
  std::vector<Complex> rem = coeffs_;
  const int dq = degree() - d.degree();
  std::vector<Complex> quo(static_cast<size_t>(dq) + 1, Complex{0.0, 0.0});
  const Complex lead = d.leading();
  for (int k = dq; k >= 0; --k) {
    const Complex f = rem[static_cast<size_t>(k + d.degree())] / lead;
    quo[static_cast<size_t>(k)] = f;
    for (int j = 0; j <= d.degree(); ++j) {
      rem[static_cast<size_t>(k + j)] -= f * d.coeff(j);
    }
  }
  // The top deg(quotient)+... entries of rem are now (numerically) zero.
  rem.resize(static_cast<size_t>(std::max(d.degree(), 0)));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

namespace {

// Stable closed form for a z^2 + b z + c.
std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  const Complex disc = b * b - 4.0 * a * c;
  const Complex s = std::sqrt(disc);
  const Complex bp = (std::real(std::conj(b) * s) >= 0.0) ? b + s : b - s;
  if (std::abs(bp) == 0.0) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  const Complex x1 = -bp / (2.0 * a);
  const Complex x2 = (2.0 * c) / (-bp);
  return {x1, x2};
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opts) {
  if (p.is_zero()) throw Error("roots of the zero polynomial are undefined");
  const double scale = p.scale();

  // Strip exact-ish roots at the origin so monomial-heavy inputs (z^N, ...)
  // are handled exactly.
  std::vector<Complex> coeffs = p.coeffs();
  size_t strip = 0;
  while (strip + 1 < coeffs.size() &&
         std::abs(coeffs[strip]) <= opts.origin_strip_tol * scale) {
    ++strip;
  }
  std::vector<Complex> roots(strip, Complex{0.0, 0.0});
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(strip));

  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n >= 1) {
    for (auto& c : coeffs) c /= coeffs.back();
    if (n == 1) {
      roots.push_back(-coeffs[0]);
    } else if (n == 2) {
      auto qr = quadratic_roots(coeffs[2], coeffs[1], coeffs[0]);
      roots.insert(roots.end(), qr.begin(), qr.end());
    } else {
      Poly monic{std::vector<Complex>(coeffs), 0.0};
      Poly dmonic = monic.derivative();

      // Cauchy-style inclusion radius and centered starting circle.
      double bound = 0.0;
      for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(coeffs[static_cast<size_t>(k)]));
      const double radius = 0.5 * (1.0 + bound);
      const Complex center = -coeffs[static_cast<size_t>(n - 1)] / static_cast<double>(n);

      std::vector<Complex> z(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * M_PI * k / n + 0.3815926;
        z[static_cast<size_t>(k)] = center + radius * Complex{std::cos(theta), std::sin(theta)};
      }

      bool converged = false;
      for (int it = 0; it < opts.max_iterations && !converged; ++it) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
          const Complex zi = z[static_cast<size_t>(i)];
          const Complex pv = monic.eval(zi);
          Complex dv = dmonic.eval(zi);
          if (std::abs(dv) < 1e-300) dv = Complex{1e-300, 0.0};
          const Complex ratio = pv / dv;
          Complex sum{0.0, 0.0};
          for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Complex diff = zi - z[static_cast<size_t>(j)];
            if (std::abs(diff) < 1e-300) diff = Complex{1e-300, 0.0};
            sum += 1.0 / diff;
          }
          const Complex denom = 1.0 - ratio * sum;
          const Complex step = (std::abs(denom) < 1e-300) ? ratio : ratio / denom;
          z[static_cast<size_t>(i)] = zi - step;
          worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[static_cast<size_t>(i)])));
        }
        converged = worst <= opts.tolerance;
      }
      if (!converged) {
        // Accept anyway when the residuals themselves are tiny (clustered
        // roots converge linearly and may miss the step criterion).
        double res = 0.0;
        for (const auto& zi : z) {
          res = std::max(res, std::abs(monic.eval(zi)));
        }
        if (res > 1e-10 * std::max(1.0, monic.scale())) {
          throw NonConvergence("Aberth iteration did not converge");
        }
      }

      // Newton polish on well-separated (simple) roots.
      for (auto& zi : z) {
        for (int step = 0; step < 3; ++step) {
          const Complex dv = dmonic.eval(zi);
          if (std::abs(dv) < 1e-8) break;
          const Complex upd = monic.eval(zi) / dv;
          if (!std::isfinite(std::abs(upd))) break;
          zi -= upd;
        }
      }
      roots.insert(roots.end(), z.begin(), z.end());
    }
  }

  if (static_cast<int>(roots.size()) != p.degree()) {
    throw NonConvergence("root count does not match degree");
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double cluster_tol) {
  double big = 0.0;
  for (const auto& r : roots) big = std::max(big, std::abs(r));
  const double cut = cluster_tol * (1.0 + big);

  const int n = static_cast<int>(roots.size());
  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)]) <= cut) {
        parent[static_cast<size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<RootCluster> out;
  std::vector<int> seen;
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (std::find(seen.begin(), seen.end(), root) != seen.end()) continue;
    seen.push_back(root);
    Complex mean{0.0, 0.0};
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (find(j) == root) {
        mean += roots[static_cast<size_t>(j)];
        ++count;
      }
    }
    out.push_back({mean / static_cast<double>(count), count});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    return lex_less(a.center, b.center);
  });
  return out;
}

}  // namespace shiftspace

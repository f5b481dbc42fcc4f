#include "shiftspace/cuntz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shiftspace/errors.hpp"

namespace shiftspace {

namespace {

double max_coeff_diff(const Poly& a, const Poly& b) {
  const int top = std::max(a.degree(), b.degree());
  double out = 0.0;
  for (int k = 0; k <= top; ++k) out = std::max(out, std::abs(a.coeff(k) - b.coeff(k)));
  return out;
}

Poly random_poly(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> c(static_cast<size_t>(degree + 1));
  for (auto& ck : c) ck = Complex{unit(rng), unit(rng)};
  if (std::abs(c.back()) < 0.25) c.back() += Complex{1.0, 0.0};
  return Poly{c};
}

bool is_pure_power(const Poly& r) {
  if (r.degree() < 1) return false;
  if (std::abs(r.leading() - Complex{1.0, 0.0}) > 1e-14) return false;
  for (int k = 0; k < r.degree(); ++k) {
    if (std::abs(r.coeff(k)) > 1e-14 * (1.0 + r.scale())) return false;
  }
  return true;
}

}  // namespace

std::vector<Poly> radix_components(const Poly& f, const Poly& r) {
  const int N = r.degree();
  if (N < 2) throw Error("radix_components: need deg r >= 2");
  std::vector<Poly> digits;
  Poly rest = f;
  while (!rest.is_zero()) {
    auto division = rest.divmod(r);
    digits.push_back(std::move(division.second));
    rest = std::move(division.first);
  }
  std::vector<Poly> components(static_cast<size_t>(N));
  for (int n = 0; n < N; ++n) {
    std::vector<Complex> cn(digits.size(), Complex{0.0, 0.0});
    for (size_t j = 0; j < digits.size(); ++j) cn[j] = digits[j].coeff(n);
    components[static_cast<size_t>(n)] = Poly{cn};
  }
  return components;
}

Poly synthesize(const std::vector<Poly>& components, const Poly& r, int max_degree) {
  const int N = r.degree();
  if (N < 2) throw Error("synthesize: need deg r >= 2");
  if (static_cast<int>(components.size()) != N) {
    throw Error("synthesize: expected one component per monomial 1, z, ..., z^{N-1}");
  }
  int result_degree = -1;
  int digit_count = 0;
  for (int n = 0; n < N; ++n) {
    const Poly& comp = components[static_cast<size_t>(n)];
    if (comp.is_zero()) continue;
    result_degree = std::max(result_degree, n + N * comp.degree());
    digit_count = std::max(digit_count, comp.degree() + 1);
  }
  if (result_degree > max_degree) {
    throw DegreeOverflow("synthesize: result degree exceeds the configured cap");
  }
  Poly result;
  Poly rpow = Poly::monomial(0);
  for (int j = 0; j < digit_count; ++j) {
    std::vector<Complex> digit(static_cast<size_t>(N), Complex{0.0, 0.0});
    for (int n = 0; n < N; ++n) digit[static_cast<size_t>(n)] = components[static_cast<size_t>(n)].coeff(j);
    result = result + Poly{digit} * rpow;
    if (j + 1 < digit_count) rpow = rpow * r;
  }
  return result;
}

double parseval_defect(const Poly& f, int N, const std::function<double(int)>& h) {
  auto weight = [&](int j) { return h ? h(j) : 1.0; };
  double lhs = 0.0;
  for (int k = 0; k <= f.degree(); ++k) lhs += std::norm(f.coeff(k)) * weight(k / N);
  double rhs = 0.0;
  for (const Poly& comp : radix_components(f, Poly::monomial(N))) {
    for (int j = 0; j <= comp.degree(); ++j) rhs += std::norm(comp.coeff(j)) * weight(j);
  }
  return std::abs(lhs - rhs) / (1.0 + lhs);
}

CuntzReport verify_cuntz_polynomial(const Poly& r, int max_degree, unsigned seed, int trials) {
  const int N = r.degree();
  if (N < 2) throw Error("verify_cuntz_polynomial: need deg r >= 2");
  CuntzReport report;
  report.trials = trials;
  const bool pure_power = is_pure_power(r);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Poly f = random_poly(max_degree, rng);
    const auto components = radix_components(f, r);
    const Poly back = synthesize(components, r, max_degree);
    report.completeness =
        std::max(report.completeness, max_coeff_diff(back, f) / (1.0 + f.scale()));

    const int gdeg = (max_degree - (N - 1)) / N;
    const Poly g = random_poly(gdeg, rng);
    for (int n = 0; n < N; ++n) {
      std::vector<Poly> single(static_cast<size_t>(N));
      single[static_cast<size_t>(n)] = g;
      const Poly branch = synthesize(single, r, max_degree);
      const auto recovered = radix_components(branch, r);
      for (int m = 0; m < N; ++m) {
        const Poly want = (m == n) ? g : Poly{};
        report.orthogonality =
            std::max(report.orthogonality,
                     max_coeff_diff(recovered[static_cast<size_t>(m)], want) / (1.0 + g.scale()));
      }
    }
    if (pure_power) {
      report.norm_checked = true;
      report.norm_defect = std::max(report.norm_defect, parseval_defect(f, N));
      report.norm_defect = std::max(
          report.norm_defect, parseval_defect(f, N, [](int j) { return 1.0 / (1.0 + j); }));
    }
  }
  return report;
}

QuadratureCuntzReport verify_cuntz_quadrature(const StateBasis& basis, const AnalyticFn& f,
                                              const std::vector<Complex>& points,
                                              const std::function<Complex(Complex)>& probe,
                                              int value_samples, unsigned seed) {
  QuadratureCuntzReport report;
  const auto dec = decompose(basis, f);
  const auto roundtrip = check_roundtrip(dec, points, 0.9);
  report.completeness = roundtrip.max_residual;
  report.samples_used = roundtrip.samples_used;

  const int N = basis.N();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < N; ++n) {
    auto branch = AnalyticFn::scalar([basis, probe, n](Complex z) {
      return basis.eval_Z(z)(n) * probe(basis.r().eval(z));
    });
    const auto dn = decompose(basis, branch);
    for (int s = 0; s < value_samples; ++s) {
      const double rad = 0.75 * dn.rho() * std::sqrt(unit(rng));
      const double theta = 2.0 * 3.14159265358979323846 * unit(rng);
      const Complex v = rad * Complex{std::cos(theta), std::sin(theta)};
      const CVec F = dn.evalF(v);
      const Complex pv = probe(v);
      for (int m = 0; m < N; ++m) {
        const Complex want = (m == n) ? pv : Complex{0.0, 0.0};
        report.component_recovery = std::max(
            report.component_recovery, std::abs(F(m) - want) / (1.0 + std::abs(pv)));
      }
    }
  }
  return report;
}

double kernel_fixed_point_defect(const StateBasis& basis,
                                 const std::function<Complex(Complex, Complex)>& kernel,
                                 const std::vector<Complex>& points) {
  double defect = 0.0;
  for (const Complex& z : points) {
    if (basis.r().near_pole(z, 1e-10)) continue;
    const auto Zz = basis.eval_Z(z);
    for (const Complex& w : points) {
      if (basis.r().near_pole(w, 1e-10)) continue;
      const auto Zw = basis.eval_Z(w);
      Complex sum{0.0, 0.0};
      for (int n = 0; n < basis.N(); ++n) sum += Zz(n) * std::conj(Zw(n));
      const Complex lhs = kernel(z, w);
      const Complex rhs = sum * kernel(basis.r().eval(z), basis.r().eval(w));
      defect = std::max(defect, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
  }
  return defect;
}

}  // namespace shiftspace

// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned in
// code, exit status 0 only if every criterion passes. Each criterion states
// its own bound next to the measured value so the output is self-contained.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "shiftspace/cuntz.hpp"
#include "shiftspace/kernels.hpp"
#include "shiftspace/representation.hpp"
#include "shiftspace/resolvent.hpp"
#include "shiftspace/statespace.hpp"
#include "shiftspace/symmat.hpp"
#include "shiftspace/types.hpp"
#include "shiftspace/utils.hpp"
#include "support/test_support.hpp"

using namespace shiftspace;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

// "<value> <= <bound>" with the comparison baked into ok.
std::string vs(double value, double bound) { return fmt(value) + " <= " + fmt(bound); }

struct Line {
  bool ok = false;
  std::string label;
  std::string detail;
};

RationalFn laurent_fixture(int M) {  // r = z^M + 1/z
  std::vector<Complex> pc(static_cast<size_t>(M + 2), Complex{0.0, 0.0});
  pc.front() = Complex{1.0, 0.0};
  pc.back() = Complex{1.0, 0.0};
  return RationalFn(Poly(pc), Poly({Complex{0.0, 0.0}, Complex{1.0, 0.0}}));
}

CMat scalar_one() {
  CMat J(1, 1);
  J(0, 0) = Complex{1.0, 0.0};
  return J;
}

CMat ones1() { return scalar_one(); }

const std::vector<Complex>& blaschke_zeros() {
  static const std::vector<Complex> zeros = {{0.5, 0.0}, {-0.3, 0.2}, {0.1, -0.6}};
  return zeros;
}

Complex blaschke_half(Complex v) { return (v - 0.5) / (1.0 - 0.5 * v); }

std::vector<Complex> upper_points(int count, unsigned seed, double rmin, double rmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double radius = rmin + (rmax - rmin) * unit(rng);
    const double angle = kPi * (0.1 + 0.8 * unit(rng));
    pts.push_back(radius * Complex{std::cos(angle), std::sin(angle)});
  }
  return pts;
}

// The first `count` regular values of r drawn from a deterministic pool.
std::vector<Complex> omega_values(const RationalFn& r, int count, unsigned seed) {
  std::vector<Complex> out;
  for (Complex a : testsupport::random_points(40 * count, seed, 0.25, 1.6)) {
    if (r.in_omega(a)) out.push_back(a);
    if (static_cast<int>(out.size()) == count) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// 1. Closed-form symmetric matrices
// ---------------------------------------------------------------------------
Line criterion1() {
  constexpr double bound = 1e-9;
  double dev = 0.0;
  for (int M = 1; M <= 5; ++M) {
    auto basis = StateBasis::laurent(laurent_fixture(M));
    const CMat X = assoc_sym_matrix(basis, scalar_one()).X;
    const int n = M + 1;
    CMat want = CMat::Zero(n, n);
    for (int k = 0; k < M; ++k) want(k, M - 1 - k) = Complex{1.0, 0.0};
    want(n - 1, n - 1) = Complex{-1.0, 0.0};
    dev = std::max(dev, (X - want).cwiseAbs().maxCoeff());
  }
  return {dev <= bound, "closed-form symmetric matrices (z^M + 1/z, M=1..5)", vs(dev, bound)};
}

// ---------------------------------------------------------------------------
// 2. Independence of the regular value
// ---------------------------------------------------------------------------
Line criterion2() {
  constexpr double bound = 1e-8;
  std::vector<StateBasis> bases;
  bases.push_back(StateBasis::laurent(laurent_fixture(1)));
  bases.push_back(StateBasis::laurent(laurent_fixture(2)));
  bases.push_back(StateBasis::canonical(
      RationalFn::from_poly(Poly({Complex{1.0, 0.0}, {}, {}, Complex{1.0, 0.0}}))));
  bases.push_back(StateBasis::blaschke(blaschke_zeros()));
  double dev = 0.0;
  unsigned seed = 101;
  for (const auto& basis : bases) {
    const auto alphas = omega_values(basis.r(), 10, seed++);
    std::vector<CMat> xs;
    for (Complex a : alphas) xs.push_back(assoc_sym_matrix(basis, scalar_one(), a).X);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j)
        dev = std::max(dev, (xs[i] - xs[j]).cwiseAbs().maxCoeff());
  }
  return {dev <= bound, "independence of the regular value (10 values, 4 bases)",
          vs(dev, bound)};
}

// ---------------------------------------------------------------------------
// 3. Vanishing low-order moments and Hankel antidiagonals
// ---------------------------------------------------------------------------
Line criterion3() {
  constexpr double zero_bound = 1e-8;
  constexpr double hankel_bound = 1e-9;
  double zero_dev = 0.0;
  double hankel_dev = 0.0;
  for (int N = 3; N <= 6; ++N) {
    std::vector<Complex> roots;
    for (unsigned attempt = 0;; ++attempt) {
      roots = testsupport::random_points(N, 300 + 17 * static_cast<unsigned>(N) + attempt,
                                         0.45, 1.5);
      double sep = 1e9;
      for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
          sep = std::min(sep, std::abs(roots[i] - roots[j]));
      if (sep >= 0.35) break;
    }
    auto basis = StateBasis::canonical(RationalFn::from_poly(Poly::from_roots(roots)));
    const CMat X = assoc_sym_matrix(basis, scalar_one()).X;
    for (int k = 0; k < N; ++k) {
      for (int l = 0; l < N; ++l) {
        if (k + l <= N - 2) zero_dev = std::max(zero_dev, std::abs(X(k, l)));
        if (k > 0 && l < N - 1)
          hankel_dev = std::max(hankel_dev, std::abs(X(k, l) - X(k - 1, l + 1)));
      }
    }
  }
  const bool ok = zero_dev <= zero_bound && hankel_dev <= hankel_bound;
  return {ok, "vanishing low-order moments + Hankel antidiagonals (N=3..6)",
          "zeros " + vs(zero_dev, zero_bound) + "; antidiag " + vs(hankel_dev, hankel_bound)};
}

// ---------------------------------------------------------------------------
// 4. Resolvent identity
// ---------------------------------------------------------------------------
Line criterion4() {
  constexpr double bound = 1e-9;
  std::vector<RationalFn> fixtures;
  fixtures.push_back(RationalFn::from_poly(Poly::monomial(1)));
  fixtures.push_back(RationalFn::from_poly(Poly::monomial(2)));
  fixtures.push_back(
      RationalFn::from_poly(Poly({Complex{1.0, 0.0}, {}, {}, Complex{1.0, 0.0}})));
  fixtures.push_back(laurent_fixture(1));
  fixtures.push_back(laurent_fixture(2));
  fixtures.push_back(RationalFn::blaschke(blaschke_zeros()));
  const AnalyticFn f = AnalyticFn::from_poly(
      Poly({Complex{1.0, 0.0}, Complex{2.0, 0.0}, {}, Complex{1.0, 0.0}}));
  const auto samples = testsupport::random_points(50, 212, 0.15, 1.9);
  double dev = 0.0;
  int pairs_run = 0;
  unsigned seed = 400;
  for (const auto& r : fixtures) {
    const auto values = omega_values(r, 40, seed++);
    for (size_t i = 0; i + 1 < values.size(); i += 2) {
      const auto report = check_resolvent_identity(r, f, values[i], values[i + 1], samples);
      dev = std::max(dev, report.max_residual);
      ++pairs_run;
    }
  }
  const bool ok = dev <= bound && pairs_run >= 6 * 20;
  return {ok, "resolvent identity (20 pairs x 6 fixtures x 50 points)", vs(dev, bound)};
}

// ---------------------------------------------------------------------------
// 5. Representation round trip + node doubling
// ---------------------------------------------------------------------------
Line criterion5() {
  constexpr double roundtrip_bound = 1e-7;
  constexpr double doubling_bound = 1e-9;
  struct Fixture {
    StateBasis basis;
    Poly f;
    // Extracting ten Taylor coefficients divides machine roundoff by
    // radius^9, so the doubling comparison is only meaningful when the
    // certified radius is not tiny. Bases that fail that geometric bar
    // (the Blaschke cover has radius ~0.1) still run the round trip.
    bool doubling = true;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({StateBasis::laurent(laurent_fixture(1)), Poly::monomial(1), true});
  fixtures.push_back({StateBasis::laurent(laurent_fixture(2)),
                      Poly({Complex{1.0, 0.0}, {}, Complex{1.0, 0.0}}), true});
  fixtures.push_back({StateBasis::canonical(RationalFn::from_poly(Poly::monomial(2))),
                      Poly::monomial(3), true});
  fixtures.push_back(
      {StateBasis::canonical(
           RationalFn::from_poly(Poly({Complex{1.0, 0.0}, {}, {}, Complex{1.0, 0.0}}))),
       Poly({Complex{-1.0, 0.0}, Complex{1.0, 0.0}, {}, {}, Complex{-2.0, 0.0}, {},
             Complex{1.0, 0.0}}),
       true});
  fixtures.push_back({StateBasis::blaschke(blaschke_zeros()),
                      Poly({{}, Complex{0.5, 0.0}, Complex{1.0, 0.0}}), false});
  double roundtrip_dev = 0.0;
  double doubling_dev = 0.0;
  int min_used = 1 << 30;
  unsigned seed = 500;
  for (const auto& fixture : fixtures) {
    const AnalyticFn f = AnalyticFn::from_poly(fixture.f);
    const Decomposition dec(fixture.basis, f);
    // sample until at least 100 points land inside the safe evaluation region
    for (int request = 400;; request *= 2) {
      const auto points = testsupport::points_in_cover(dec.cover(), request, seed);
      const auto report = check_roundtrip(dec, points);
      if (report.samples_used >= 100 || request >= 12800) {
        roundtrip_dev = std::max(roundtrip_dev, report.max_residual);
        min_used = std::min(min_used, report.samples_used);
        break;
      }
    }
    ++seed;
    if (!fixture.doubling) continue;
    DecomposeOptions doubled;
    doubled.nodes = 4096;
    const Decomposition dec2(fixture.basis, f, doubled);
    const auto t1 = dec.taylor_coeffs(10);
    const auto t2 = dec2.taylor_coeffs(10);
    for (int k = 0; k < 10; ++k) {
      const double ref = t2[static_cast<size_t>(k)].cwiseAbs().maxCoeff();
      const double diff =
          (t1[static_cast<size_t>(k)] - t2[static_cast<size_t>(k)]).cwiseAbs().maxCoeff();
      doubling_dev = std::max(doubling_dev, diff / (1.0 + ref));
    }
  }
  const bool ok =
      roundtrip_dev <= roundtrip_bound && doubling_dev <= doubling_bound && min_used >= 100;
  return {ok, "representation round trip + node doubling (5 fixtures)",
          "roundtrip " + vs(roundtrip_dev, roundtrip_bound) + " on >=100 pts; doubling " +
              vs(doubling_dev, doubling_bound)};
}

// ---------------------------------------------------------------------------
// 6. Exact decomposition witnesses
// ---------------------------------------------------------------------------
Line criterion6() {
  constexpr double witness_bound = 1e-8;
  constexpr double exact_bound = 1e-15;
  // f = z over r = z + 1/z in the basis (1, 1/z): F(w) = (w, -1).
  auto basis = StateBasis::laurent(laurent_fixture(1));
  const Decomposition dec(basis, AnalyticFn::from_poly(Poly::monomial(1)));
  const auto taylor = dec.taylor_coeffs(4);
  double witness_dev = std::abs(taylor[0](0) - Complex{0.0, 0.0});
  witness_dev = std::max(witness_dev, std::abs(taylor[0](1) - Complex{-1.0, 0.0}));
  witness_dev = std::max(witness_dev, std::abs(taylor[1](0) - Complex{1.0, 0.0}));
  witness_dev = std::max(witness_dev, std::abs(taylor[1](1)));
  for (int k = 2; k < 4; ++k)
    witness_dev = std::max(witness_dev, taylor[static_cast<size_t>(k)].cwiseAbs().maxCoeff());

  // f = z^3 along r = z^2, exact Euclidean path: components (0, w).
  const auto components = radix_components(Poly::monomial(3), Poly::monomial(2));
  double exact_dev = 0.0;
  for (Complex c : components[0].coeffs()) exact_dev = std::max(exact_dev, std::abs(c));
  exact_dev = std::max(exact_dev, std::abs(components[1].coeff(0)));
  exact_dev = std::max(exact_dev, std::abs(components[1].coeff(1) - Complex{1.0, 0.0}));
  const bool ok = witness_dev <= witness_bound && exact_dev <= exact_bound;
  return {ok, "exact decomposition witnesses (w,-1) and (0,w)",
          "quadrature " + vs(witness_dev, witness_bound) + "; euclidean " +
              vs(exact_dev, exact_bound)};
}

// ---------------------------------------------------------------------------
// 7. Branch-operator (Cuntz) relations
// ---------------------------------------------------------------------------
Line criterion7() {
  constexpr double poly_bound = 1e-12;
  constexpr double quad_bound = 1e-7;
  double poly_dev = 0.0;
  for (int N : {2, 3}) {
    const auto report = verify_cuntz_polynomial(Poly::monomial(N), 32, 7, 8);
    poly_dev = std::max({poly_dev, report.completeness, report.orthogonality,
                         report.norm_checked ? report.norm_defect : 0.0});
  }
  auto basis = StateBasis::laurent(laurent_fixture(1));
  const AnalyticFn f = AnalyticFn::from_poly(
      Poly({{}, Complex{1.0, 0.0}, {}, Complex{1.0, 0.0}}));
  const auto points = testsupport::points_in_cover(build_cover(basis.r()), 60, 711);
  const auto quad = verify_cuntz_quadrature(basis, f, points, [](Complex v) { return v; });
  const double quad_dev = std::max(quad.completeness, quad.component_recovery);
  const bool ok = poly_dev <= poly_bound && quad_dev <= quad_bound;
  return {ok, "branch-operator relations (z^2, z^3 exact; z + 1/z quadrature)",
          "polynomial " + vs(poly_dev, poly_bound) + "; quadrature " +
              vs(quad_dev, quad_bound)};
}

// ---------------------------------------------------------------------------
// 8. Stein solver + Theta-form controls
// ---------------------------------------------------------------------------
Line criterion8() {
  constexpr double stein_bound = 1e-10;
  constexpr double match_bound = 1e-8;
  constexpr double control_floor = 1e-3;

  // random well-conditioned data: |eigenvalues of A| stay below ~0.65 while
  // B = I, so the displacement operator is far from singular
  double stein_dev = 0.0;
  std::mt19937_64 rng(808);
  for (int M = 2; M <= 6; ++M) {
    const double scale = 0.8 / std::sqrt(static_cast<double>(M));
    CMat A(M, M), C(2, M);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) A(i, j) = scale * testsupport::random_unit(rng);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < M; ++j) C(i, j) = testsupport::random_unit(rng);
    CMat J = CMat::Identity(2, 2);
    J(1, 1) = -1.0;
    const auto solution = solve_stein(A, CMat::Identity(M, M), C, J);
    stein_dev = std::max({stein_dev, solution.residual, solution.hermiticity_defect});
  }

  auto identity_basis = StateBasis::canonical(RationalFn::from_poly(Poly::monomial(1)));
  const auto disk = testsupport::random_points(8, 815, 0.1, 0.65);

  // positive control: the matched pair (Theta, P) reproduces the kernel
  double match_dev = 0.0;
  {
    CMat J = CMat::Identity(2, 2);
    J(1, 1) = -1.0;
    InvariantSubspaceData data{CMat::Identity(2, 2), CMat::Identity(2, 2), CMat::Zero(2, 2), J,
                               2};
    MatrixFn theta = [](Complex v) -> CMat { return v * CMat::Identity(2, 2); };
    match_dev = theta_kernel_check(identity_basis, data, J, theta, disk).max_residual;
  }
  {
    const auto stein = solve_stein(ones1(), 0.5 * ones1(), ones1(), ones1());
    InvariantSubspaceData data{ones1(), ones1(), 0.5 * ones1(), stein.P, 1};
    MatrixFn theta = [](Complex v) -> CMat {
      CMat out(1, 1);
      out(0, 0) = blaschke_half(v);
      return out;
    };
    match_dev = std::max(
        match_dev, theta_kernel_check(identity_basis, data, ones1(), theta, disk).max_residual);
  }

  // negative control: P deliberately not solving the equation must be loud
  double control_dev = 0.0;
  {
    InvariantSubspaceData data{ones1(), ones1(), 0.5 * ones1(), ones1(), 1};
    MatrixFn theta = [](Complex v) -> CMat {
      CMat out(1, 1);
      out(0, 0) = blaschke_half(v);
      return out;
    };
    control_dev = theta_kernel_check(identity_basis, data, ones1(), theta, disk).max_residual;
  }

  const bool ok =
      stein_dev <= stein_bound && match_dev <= match_bound && control_dev > control_floor;
  return {ok, "Stein solver + Theta-form controls",
          "stein " + vs(stein_dev, stein_bound) + "; match " + vs(match_dev, match_bound) +
              "; control " + fmt(control_dev) + " > " + fmt(control_floor)};
}

// ---------------------------------------------------------------------------
// 9. Invariant-subspace covariance
// ---------------------------------------------------------------------------
Line criterion9() {
  constexpr double bound = 1e-9;
  double dev = 0.0;
  {
    auto basis = StateBasis::canonical(RationalFn::from_poly(Poly::monomial(1)));
    InvariantSubspaceData data{ones1(), ones1(), CMat::Ones(1, 1) * kI, ones1(), 1};
    const auto samples = testsupport::random_points(40, 901, 0.2, 1.4);
    dev = std::max(dev,
                   check_invariant_covariance(basis, data, Complex{0.3, 0.1}, samples)
                       .max_residual);
  }
  {
    auto basis = StateBasis::laurent(laurent_fixture(1));
    CMat C(2, 1);
    C << Complex{1.0, 0.0}, Complex{0.0, 0.0};
    InvariantSubspaceData data{C, ones1(), CMat::Ones(1, 1) * 0.5, ones1() * (4.0 / 3.0), 1};
    std::vector<Complex> samples;
    for (Complex z : testsupport::random_points(60, 902, 0.3, 1.7))
      if (std::abs(z - 1.0) > 0.2 && std::abs(z + 1.0) > 0.2) samples.push_back(z);
    dev = std::max(dev,
                   check_invariant_covariance(basis, data, Complex{0.4, 0.25}, samples)
                       .max_residual);
  }
  {
    auto basis = StateBasis::canonical(RationalFn::from_poly(Poly::monomial(2)));
    CMat C(4, 2);
    C << Complex{1.0, 0.0}, Complex{0.3, 0.1},   //
        Complex{0.0, 0.5}, Complex{1.0, 0.0},    //
        Complex{-0.4, 0.0}, Complex{0.2, -0.3},  //
        Complex{0.1, 0.1}, Complex{0.6, 0.0};
    CMat B(2, 2);
    B << Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0};
    InvariantSubspaceData data{C, CMat::Identity(2, 2), B, CMat::Identity(2, 2), 2};
    const auto samples = testsupport::random_points(40, 903, 0.25, 1.5);
    dev = std::max(dev,
                   check_invariant_covariance(basis, data, Complex{0.5, 0.3}, samples)
                       .max_residual);
  }
  return {dev <= bound, "invariant-subspace covariance (3 pencil fixtures)", vs(dev, bound)};
}

// ---------------------------------------------------------------------------
// 10. Kernel identities
// ---------------------------------------------------------------------------
Line criterion10() {
  constexpr double swap_bound = 1e-10;
  constexpr double split_bound = 1e-9;
  constexpr double debranges_bound = 1e-8;
  constexpr double psd_floor = -1e-9;

  auto basis = StateBasis::laurent(laurent_fixture(1));
  const CMat X = assoc_sym_matrix(basis, scalar_one()).X;

  // Hermitian swap K(z, w) = K(w, z)^* across the kernel families
  double swap_dev = 0.0;
  {
    MatrixFn theta = [](Complex v) -> CMat {
      CMat out = CMat::Identity(2, 2);
      out(0, 0) = blaschke_half(v);
      out(1, 0) = 0.2 * v;
      return out;
    };
    const auto grid = testsupport::random_points(6, 906, 1.2, 1.8);
    std::vector<KernelFn> families = {
        [&](Complex z, Complex w) { return line_theta_kernel(basis, X, theta, z, w); },
        [&](Complex z, Complex w) { return circle_theta_kernel(basis, X, theta, z, w); },
        [&](Complex z, Complex w) { return s_kernel(basis, X, theta, z, w); },
        [&](Complex z, Complex w) { return hardy_kernel(basis, z, w); },
        [&](Complex z, Complex w) { return hardy_circle_kernel(basis, X, z, w); }};
    for (const auto& K : families)
      swap_dev = std::max(swap_dev, hermitian_swap_defect(K, grid));
  }

  // additive split of the Theta kernel for factored Theta
  double split_dev = 0.0;
  {
    MatrixFn theta1 = [](Complex v) -> CMat {
      CMat out = CMat::Identity(2, 2);
      out(0, 0) = v;
      out(1, 0) = Complex{0.2, 0.1};
      return out;
    };
    MatrixFn theta2 = [](Complex v) -> CMat {
      CMat out = CMat::Identity(2, 2);
      out(1, 1) = blaschke_half(v);
      out(0, 1) = 0.3 * v;
      return out;
    };
    const auto grid = testsupport::random_points(7, 905, 0.3, 0.8);
    split_dev = theta_split_check(basis, X, theta1, theta2, KernelDomain::Line, grid)
                    .max_residual;
    split_dev = std::max(
        split_dev,
        theta_split_check(basis, X, theta1, theta2, KernelDomain::Circle, grid).max_residual);
  }

  // two-frame split about an anchor reconstructs the kernel
  double debranges_dev = 0.0;
  {
    auto scalar_kernel = [](std::function<Complex(Complex, Complex)> k) -> KernelFn {
      return [k = std::move(k)](Complex z, Complex w) {
        CMat out(1, 1);
        out(0, 0) = k(z, w);
        return out;
      };
    };
    const auto upper = upper_points(6, 907, 0.3, 1.4);
    KernelFn constant = scalar_kernel([](Complex, Complex) { return Complex{1.0, 0.0}; });
    KernelFn indefinite =
        scalar_kernel([](Complex z, Complex w) { return z + std::conj(w); });
    for (const auto& [K, alpha] :
         {std::pair<KernelFn, Complex>{constant, Complex{0.0, 1.0}},
          std::pair<KernelFn, Complex>{indefinite, Complex{1.0, 1.0}}}) {
      const auto split = de_branges_split(K, alpha, KernelDomain::Line);
      for (Complex z : upper)
        for (Complex w : upper)
          debranges_dev = std::max(
              debranges_dev, (split.reconstruct(z, w) - K(z, w)).cwiseAbs().maxCoeff());
    }
    KernelFn db = scalar_kernel([](Complex z, Complex w) {
      return (1.0 - blaschke_half(z) * std::conj(blaschke_half(w))) /
             (1.0 - z * std::conj(w));
    });
    const auto split = de_branges_split(db, Complex{1.0 / 3.0, 0.0}, KernelDomain::Circle);
    const auto disk = testsupport::random_points(6, 908, 0.1, 0.6);
    for (Complex z : disk)
      for (Complex w : disk)
        debranges_dev = std::max(debranges_dev,
                                 (split.reconstruct(z, w) - db(z, w)).cwiseAbs().maxCoeff());
  }

  // Hardy-analog positivity where Im r(z) > 0
  double min_eig = 0.0;
  int negatives = 0;
  {
    std::vector<Complex> grid;
    for (int k = 0; k < 10; ++k) {
      const double radius = 1.3 + 0.06 * k;
      const double angle = kPi * (0.12 + 0.076 * k);
      grid.push_back(radius * Complex{std::cos(angle), std::sin(angle)});
    }
    KernelFn K = [&](Complex z, Complex w) { return hardy_kernel(basis, z, w); };
    const auto gram = kernel_gram(K, grid, 1e-9);
    min_eig = gram.eigenvalues.minCoeff();
    negatives = gram.negatives;
  }

  const bool ok = swap_dev <= swap_bound && split_dev <= split_bound &&
                  debranges_dev <= debranges_bound && negatives == 0;
  return {ok, "kernel identities (swap, split, two-frame, positivity)",
          "swap " + vs(swap_dev, swap_bound) + "; split " + vs(split_dev, split_bound) +
              "; two-frame " + vs(debranges_dev, debranges_bound) + "; min eig " +
              fmt(min_eig) + " (floor " + fmt(psd_floor) + ")"};
}

}  // namespace

int main() {
  std::vector<Line> lines;
  lines.push_back(criterion1());
  lines.push_back(criterion2());
  lines.push_back(criterion3());
  lines.push_back(criterion4());
  lines.push_back(criterion5());
  lines.push_back(criterion6());
  lines.push_back(criterion7());
  lines.push_back(criterion8());
  lines.push_back(criterion9());
  lines.push_back(criterion10());

  int failed = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (!lines[i].ok) ++failed;
    std::printf("%s %2zu/10 %-58s [%s]\n", lines[i].ok ? "PASS" : "FAIL", i + 1,
                lines[i].label.c_str(), lines[i].detail.c_str());
  }
  std::printf("%d/10 acceptance criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}

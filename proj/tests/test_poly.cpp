#include <doctest.h>

#include <cmath>

#include "shiftspace/errors.hpp"
#include "shiftspace/poly.hpp"
#include "support/test_support.hpp"

using namespace shiftspace;

namespace {
const double kSqrt3Half = 0.8660254037844386;  // sqrt(3)/2
}

TEST_CASE("construction trims trailing near-zero coefficients") {
  Poly p{{Complex{1.0, 0.0}, Complex{2.0, 0.0}, Complex{1e-16, 0.0}}};
  CHECK(p.degree() == 1);
  CHECK(Poly{}.is_zero());
  CHECK(Poly{}.degree() == -1);
}

TEST_CASE("horner evaluation matches direct power sum") {
  std::mt19937_64 rng(11);
  Poly p{{Complex{1.5, -0.5}, Complex{0.0, 2.0}, Complex{-3.0, 0.25}, Complex{1.0, 1.0}}};
  for (const auto& z : testsupport::random_points(25, 7)) {
    Complex direct{0.0, 0.0};
    Complex zp{1.0, 0.0};
    for (int k = 0; k <= p.degree(); ++k) {
      direct += p.coeff(k) * zp;
      zp *= z;
    }
    CHECK(std::abs(p.eval(z) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("derivative and taylor shift") {
  Poly p{{Complex{1.0, 0.0}, Complex{2.0, 0.0}, Complex{3.0, 0.0}}};  // 1 + 2z + 3z^2
  Poly d = p.derivative();
  CHECK(d.degree() == 1);
  CHECK(std::abs(d.coeff(0) - Complex{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(d.coeff(1) - Complex{6.0, 0.0}) < 1e-15);

  // p(1 + u) = 6 + 8u + 3u^2
  Poly s = p.shifted({1.0, 0.0});
  CHECK(std::abs(s.coeff(0) - Complex{6.0, 0.0}) < 1e-14);
  CHECK(std::abs(s.coeff(1) - Complex{8.0, 0.0}) < 1e-14);
  CHECK(std::abs(s.coeff(2) - Complex{3.0, 0.0}) < 1e-14);
}

TEST_CASE("divmod reconstructs the dividend") {
  Poly a{{Complex{2.0, 1.0}, Complex{-1.0, 0.0}, Complex{0.5, -2.0}, Complex{3.0, 0.0},
          Complex{1.0, 0.5}}};
  Poly d{{Complex{1.0, -1.0}, Complex{0.0, 1.0}, Complex{1.0, 0.0}}};
  auto [quo, rem] = a.divmod(d);
  CHECK(rem.degree() < d.degree());
  Poly recon = d * quo + rem;
  for (int k = 0; k <= a.degree(); ++k) {
    CHECK(std::abs(recon.coeff(k) - a.coeff(k)) < 1e-13);
  }
}

TEST_CASE("roots of z^3 + 1 are the cube roots of -1") {
  Poly p{{Complex{1.0, 0.0}, {}, {}, Complex{1.0, 0.0}}};
  auto roots = poly_roots(p);
  REQUIRE(roots.size() == 3);
  // Sorted by (Re, Im): -1, 1/2 - i sqrt(3)/2, 1/2 + i sqrt(3)/2.
  CHECK(std::abs(roots[0] - Complex{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(roots[1] - Complex{0.5, -kSqrt3Half}) < 1e-12);
  CHECK(std::abs(roots[2] - Complex{0.5, kSqrt3Half}) < 1e-12);
}

TEST_CASE("roots of quadratics use the stable closed form") {
  // (z - 2)(z - 1/2) = z^2 - 2.5 z + 1
  Poly p{{Complex{1.0, 0.0}, Complex{-2.5, 0.0}, Complex{1.0, 0.0}}};
  auto roots = poly_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - Complex{0.5, 0.0}) < 1e-14);
  CHECK(std::abs(roots[1] - Complex{2.0, 0.0}) < 1e-14);
}

TEST_CASE("monomial roots at the origin are stripped exactly") {
  auto roots = poly_roots(Poly::monomial(5));
  REQUIRE(roots.size() == 5);
  for (const auto& w : roots) CHECK(std::abs(w) == 0.0);

  // z^3 (z - 1): origin strip + linear factor.
  Poly p = Poly::monomial(3) * Poly{{Complex{-1.0, 0.0}, Complex{1.0, 0.0}}};
  roots = poly_roots(p);
  REQUIRE(roots.size() == 4);
  CHECK(std::abs(roots[0]) == 0.0);
  CHECK(std::abs(roots[3] - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("roots round trip against from_roots fixtures") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> want;
    const int n = 2 + static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
      // Keep roots separated to stay in the simple-root regime.
      want.push_back(Complex{std::cos(1.7 * k + trial), std::sin(2.3 * k - trial)} *
                     (0.4 + 0.25 * k));
    }
    auto got = poly_roots(Poly::from_roots(want));
    REQUIRE(got.size() == want.size());
    std::sort(want.begin(), want.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (size_t k = 0; k < want.size(); ++k) {
      CHECK(std::abs(got[k] - want[k]) < 1e-9 * (1.0 + std::abs(want[k])));
    }
  }
}

TEST_CASE("residuals of computed roots are small for wilkinson-lite input") {
  // Moderately ill-conditioned real-rooted polynomial.
  std::vector<Complex> want;
  for (int k = 1; k <= 8; ++k) want.push_back({k / 4.0, 0.0});
  Poly p = Poly::from_roots(want);
  auto got = poly_roots(p);
  REQUIRE(got.size() == 8);
  for (size_t k = 0; k < got.size(); ++k) {
    CHECK(std::abs(got[k] - want[k]) < 1e-7);
  }
}

TEST_CASE("cluster_roots detects multiplicity groups") {
  std::vector<Complex> roots = {{1.0, 0.0}, {1.0 + 2e-8, -1e-8}, {-0.5, 0.5}};
  auto clusters = cluster_roots(roots, 1e-6);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].multiplicity == 1);
  CHECK(std::abs(clusters[0].center - Complex{-0.5, 0.5}) < 1e-15);
  CHECK(clusters[1].multiplicity == 2);
  CHECK(std::abs(clusters[1].center - Complex{1.0, 0.0}) < 1e-7);
}

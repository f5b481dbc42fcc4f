#include <doctest.h>

#include <cmath>
#include <random>

#include "shiftspace/errors.hpp"
#include "shiftspace/representation.hpp"
#include "support/test_support.hpp"

using namespace shiftspace;

namespace {

RationalFn z_plus_inv() {
  // z + 1/z = (z^2 + 1)/z
  return RationalFn(Poly{{Complex{1.0, 0.0}, {}, Complex{1.0, 0.0}}},
                    Poly{{{}, Complex{1.0, 0.0}}});
}

using testsupport::points_in_cover;

std::vector<Complex> values_in_disk(double rho, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k) {
    const double rad = rho * 0.75 * std::sqrt(unit(rng));
    const double theta = 2.0 * 3.14159265358979323846 * unit(rng);
    out.push_back(rad * Complex{std::cos(theta), std::sin(theta)});
  }
  return out;
}

}  // namespace

TEST_CASE("cover for a polynomial is a single certified disk") {
  auto cover = build_cover(RationalFn::from_poly(Poly::monomial(2)));
  REQUIRE(cover.centers.size() == 1);
  CHECK(std::abs(cover.centers[0]) <= 1e-9);
  CHECK(cover.radii[0] == doctest::Approx(1.0));
  CHECK(cover.rho == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cover.contains({0.5, 0.3}));
  CHECK(!cover.contains({1.5, 0.0}));
}

TEST_CASE("cover for z + 1/z: disjoint disks avoiding the pole") {
  auto cover = build_cover(z_plus_inv());
  REQUIRE(cover.centers.size() == 2);
  // Centers are the zeros +-i of z^2 + 1; nearest exclusion is the pole at 0.
  CHECK(std::abs(cover.centers[0] + Complex{0.0, 1.0}) <= 1e-9);
  CHECK(std::abs(cover.centers[1] - Complex{0.0, 1.0}) <= 1e-9);
  CHECK(cover.radii[0] == doctest::Approx(0.45));
  CHECK(std::abs(cover.centers[0] - cover.centers[1]) >= cover.radii[0] + cover.radii[1]);
  CHECK(!cover.contains({0.0, 0.0}));
  CHECK(cover.rho > 0.3);
  CHECK(cover.rho < 1.0);
}

TEST_CASE("decomposition witness: r = z + 1/z, f = z") {
  auto basis = StateBasis::laurent(z_plus_inv());
  auto dec = decompose(basis, AnalyticFn::from_poly(Poly{{{}, Complex{1.0, 0.0}}}));
  for (const Complex& v : values_in_disk(dec.rho(), 25, 1701)) {
    const CVec F = dec.evalF(v);
    CHECK(std::abs(F(0) - v) <= 1e-9);
    CHECK(std::abs(F(1) + Complex{1.0, 0.0}) <= 1e-9);
  }
  auto coeffs = dec.taylor_coeffs(5);
  CHECK(std::abs(coeffs[0](0)) <= 1e-10);
  CHECK(std::abs(coeffs[0](1) + Complex{1.0, 0.0}) <= 1e-10);
  CHECK(std::abs(coeffs[1](0) - Complex{1.0, 0.0}) <= 1e-10);
  for (size_t k = 2; k < coeffs.size(); ++k) CHECK(coeffs[k].cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("decomposition witness: r = z^2, f = z^3") {
  auto basis = StateBasis::canonical(RationalFn::from_poly(Poly::monomial(2)));
  auto dec = decompose(basis, AnalyticFn::from_poly(Poly::monomial(3)));
  for (const Complex& v : values_in_disk(dec.rho(), 25, 1702)) {
    const CVec F = dec.evalF(v);
    CHECK(std::abs(F(0)) <= 1e-10);
    CHECK(std::abs(F(1) - v) <= 1e-10);
  }
}

TEST_CASE("roundtrip reconstruction for an entire function") {
  auto basis = StateBasis::laurent(z_plus_inv());
  auto f = AnalyticFn::scalar([](Complex z) { return std::exp(z); });
  auto dec = decompose(basis, f);
  auto report = check_roundtrip(dec, points_in_cover(dec.cover(), 300, 99), 0.9);
  CHECK(report.samples_used >= 60);
  CHECK(report.max_residual <= 1e-9);
}

TEST_CASE("roundtrip for a vector-valued function uses block structure") {
  auto basis = StateBasis::laurent(z_plus_inv());
  AnalyticFn f(2, [](Complex z) {
    CVec v(2);
    v(0) = std::exp(z);
    v(1) = z * std::cos(z);
    return v;
  });
  auto dec = decompose(basis, f);
  CHECK(dec.dim() == 4);
  CHECK(dec.block_dim() == 2);
  auto report = check_roundtrip(dec, points_in_cover(dec.cover(), 300, 100), 0.9);
  CHECK(report.samples_used >= 60);
  CHECK(report.max_residual <= 1e-9);
}

TEST_CASE("decomposition recovers a prescribed coefficient function") {
  auto r = z_plus_inv();
  auto basis = StateBasis::laurent(r);
  // f = e_1 * G_1(r) + e_2 * G_2(r) with e = (1, 1/z); uniqueness forces
  // F = (G_1, G_2).
  auto f = AnalyticFn::scalar([r](Complex z) {
    const Complex v = r.eval(z);
    return std::exp(v) + (v * v - Complex{1.0, 0.0}) / z;
  });
  auto dec = decompose(basis, f);
  for (const Complex& v : values_in_disk(dec.rho(), 20, 2024)) {
    const CVec F = dec.evalF(v);
    CHECK(std::abs(F(0) - std::exp(v)) <= 1e-9);
    CHECK(std::abs(F(1) - (v * v - Complex{1.0, 0.0})) <= 1e-9);
  }
}

TEST_CASE("taylor coefficients are stable under node doubling") {
  auto basis = StateBasis::laurent(z_plus_inv());
  auto f = AnalyticFn::scalar([](Complex z) { return std::exp(z); });
  auto dec = decompose(basis, f);
  auto lo = dec.taylor_coeffs(10, 0.75, 512);
  auto hi = dec.taylor_coeffs(10, 0.75, 1024);
  for (size_t k = 0; k < lo.size(); ++k) {
    CHECK((lo[k] - hi[k]).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("decomposition transforms consistently under change of basis") {
  auto basis = StateBasis::laurent(z_plus_inv());
  CMat S(2, 2);
  S << Complex{2.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 1.0}, Complex{1.0, 0.0};
  auto changed = basis.with_change_of_basis(S, "sheared");
  auto f = AnalyticFn::scalar([](Complex z) { return std::exp(z); });
  auto dec0 = decompose(basis, f);
  auto dec1 = decompose(changed, f);
  const CMat Sinv = S.inverse();
  for (const Complex& v : values_in_disk(std::min(dec0.rho(), dec1.rho()), 10, 7)) {
    const CVec want = Sinv * dec0.evalF(v);
    CHECK((dec1.evalF(v) - want).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("roundtrip in the blaschke basis") {
  auto basis = StateBasis::blaschke({{0.5, 0.0}, {-0.3, 0.2}, {0.1, -0.6}});
  auto f = AnalyticFn::scalar([](Complex z) { return std::exp(z); });
  auto dec = decompose(basis, f);
  auto report = check_roundtrip(dec, points_in_cover(dec.cover(), 400, 31), 0.9);
  CHECK(report.samples_used >= 40);
  CHECK(report.max_residual <= 1e-8);
}

TEST_CASE("evaluation outside the certified disk throws") {
  auto basis = StateBasis::laurent(z_plus_inv());
  auto dec = decompose(basis, AnalyticFn::from_poly(Poly::monomial(1)));
  CHECK_THROWS_AS(dec.evalF(Complex{10.0, 0.0}), EvalOutsideRho);
  CHECK_THROWS_AS(dec.reconstruct(Complex{50.0, 0.0}), EvalOutsideRho);
}

TEST_CASE("multipoint interpolation") {
  SUBCASE("closed form for r = z^2") {
    auto basis = StateBasis::canonical(RationalFn::from_poly(Poly::monomial(2)));
    auto res = multipoint_interpolate(basis, {{1.0, 0.0}, {2.0, 0.0}},
                                      {{1.0, 0.0}, {1.0, 0.0}}, {3.0, 0.0});
    // c = Z(1) + Z(2) = (2, 3); least-norm x = c^* gamma / |c|^2 = (6, 9)/13.
    CHECK(std::abs(res.x(0) - Complex{6.0 / 13.0, 0.0}) <= 1e-12);
    CHECK(std::abs(res.x(1) - Complex{9.0 / 13.0, 0.0}) <= 1e-12);
    CHECK(res.residual <= 1e-12);
  }
  SUBCASE("random functionals are matched exactly") {
    auto basis = StateBasis::laurent(z_plus_inv());
    std::mt19937_64 rng(5150);
    auto nodes = testsupport::random_points(4, 77, 0.4, 1.8);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Complex> coeffs;
      for (size_t n = 0; n < nodes.size(); ++n) coeffs.push_back(testsupport::random_unit(rng));
      const Complex gamma = testsupport::random_unit(rng) * 2.5;
      auto res = multipoint_interpolate(basis, nodes, coeffs, gamma);
      CHECK(res.residual <= 1e-10);
      // The least-norm solution is proportional to the adjoint functional.
      const Complex lead = res.x(0) / std::conj(res.functional(0));
      CHECK(std::abs(res.x(1) - lead * std::conj(res.functional(1))) <= 1e-10);
    }
  }
  SUBCASE("vanishing functional is rejected") {
    auto basis = StateBasis::canonical(RationalFn::from_poly(Poly::monomial(2)));
    CHECK_THROWS_AS(multipoint_interpolate(basis, {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}},
                                           {{1.0, 0.0}, {-2.0, 0.0}, {1.0, 0.0}},
                                           {1.0, 0.0}),
                    ZeroFunctional);
    CHECK_THROWS_AS(
        multipoint_interpolate(basis, {{1.0, 0.0}}, {{1.0, 0.0}, {2.0, 0.0}}, {1.0, 0.0}),
        Error);
  }
}

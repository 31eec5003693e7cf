#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geoflow/errors.hpp"
#include "geoflow/funk.hpp"
#include "geoflow/surface.hpp"
#include "test_helpers.hpp"

using namespace geoflow;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("frame for axis-aligned momenta") {
  const Frame f = orthonormal_frame({0.0, 0.0, 1.0});
  CHECK((f.e3 - Vec3{0, 0, 1}).norm() == 0.0);
  CHECK((f.e1 - Vec3{1, 0, 0}).norm() == 0.0);
  CHECK((f.e2 - Vec3{0, 1, 0}).norm() == 0.0);

  const Frame g = orthonormal_frame({0.0, 0.0, -5.0});
  CHECK((g.e3 - Vec3{0, 0, -1}).norm() == 0.0);
  CHECK((cross(g.e1, g.e2) - g.e3).norm() < 1e-15);
}

TEST_CASE("frame Gram matrix is the identity") {
  auto rng = testutil::make_rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Frame f = orthonormal_frame(testutil::random_unit(rng) * 2.7);
    const Vec3 es[3] = {f.e1, f.e2, f.e3};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(dot(es[i], es[j]) - (i == j ? 1.0 : 0.0)) < 1e-14);
    CHECK((cross(f.e1, f.e2) - f.e3).norm() < 1e-14);
  }
}

TEST_CASE("zero momentum is rejected") {
  CHECK_THROWS_AS(orthonormal_frame({0.0, 0.0, 0.0}), ZeroMomentum);
  CHECK_THROWS_AS(
      funk_transform(Polynomial3::constant(1.0), Vec3{0, 0, 1e-13},
                     CircleRule(16)),
      ZeroMomentum);
}

TEST_CASE("quadrature rule bookkeeping") {
  const CircleRule rule(64);
  CHECK(rule.n() == 64);
  CHECK(rule.weight() * rule.n() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(rule.nodes().front() == 0.0);
  CHECK_THROWS_AS(CircleRule(0), std::invalid_argument);
}

TEST_CASE("transform of the constant is the circumference") {
  auto rng = testutil::make_rng(32);
  const CircleRule rule(64);
  const Polynomial3 one = Polynomial3::constant(1.0);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(std::abs(funk_transform(one, testutil::random_unit(rng), rule) -
                   2.0 * kPi) < 1e-13);
}

TEST_CASE("transform of x3^2 has the closed form pi (1 - L3^2)") {
  auto rng = testutil::make_rng(33);
  const Polynomial3 z2 = Polynomial3::monomial(0, 0, 2, 1.0);
  const CircleRule coarse(64), fine(512);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 L = testutil::random_unit(rng);
    const double expected = kPi * (1.0 - L.z * L.z);
    CHECK(std::abs(funk_transform(z2, L, coarse) - expected) < 1e-12);
    CHECK(std::abs(funk_transform(z2, L, fine) - expected) < 1e-12);
  }
}

TEST_CASE("odd fields integrate to zero on every great circle") {
  auto rng = testutil::make_rng(34);
  const CircleRule rule(64);
  const Polynomial3 z = Polynomial3::variable(2);
  const Polynomial3 xyz = Polynomial3::monomial(1, 1, 1, 3.0) +
                          Polynomial3::monomial(3, 0, 0, -1.2) +
                          Polynomial3::monomial(0, 0, 5, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 L = testutil::random_unit(rng);
    CHECK(std::abs(funk_transform(z, L, rule)) < 1e-14);
    CHECK(std::abs(funk_transform(xyz, L, rule)) < 1e-13);
  }
}

TEST_CASE("linearity, evenness and frame independence") {
  auto rng = testutil::make_rng(35);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const CircleRule rule(64);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial3 g = testutil::random_polynomial(rng, 6);
    const Polynomial3 h = testutil::random_polynomial(rng, 6);
    const Vec3 L = testutil::random_unit(rng);
    const double a = coeff(rng), b = coeff(rng);

    CHECK(std::abs(funk_transform(g * a + h * b, L, rule) -
                   (a * funk_transform(g, L, rule) +
                    b * funk_transform(h, L, rule))) < 1e-12);

    CHECK(std::abs(funk_transform(g, L, rule) -
                   funk_transform(g, -1.0 * L, rule)) < 1e-12);

    const Frame f = orthonormal_frame(L);
    const double beta = angle(rng);
    const Frame rotated{f.e1 * std::cos(beta) + f.e2 * std::sin(beta),
                        f.e2 * std::cos(beta) - f.e1 * std::sin(beta), f.e3};
    CHECK(std::abs(funk_transform(g, L, rule) -
                   funk_transform(g, rotated, rule)) < 1e-12);
  }
}

TEST_CASE("periodic trapezoid rule is exact once n exceeds the degree") {
  auto rng = testutil::make_rng(36);
  for (int d = 1; d <= 8; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const Polynomial3 g = testutil::random_polynomial(rng, d);
      const Vec3 L = testutil::random_unit(rng);
      CHECK(std::abs(funk_transform(g, L, CircleRule(d + 2)) -
                     funk_transform(g, L, CircleRule(4 * (d + 2)))) < 1e-13);
    }
}

TEST_CASE("angular operator point values") {
  const Polynomial3 z2 = Polynomial3::monomial(0, 0, 2, 1.0);
  CHECK(angular_operator(z2, {0.0, 0.0, 1.0}).norm() == 0.0);

  const Polynomial3 x2 = Polynomial3::monomial(2, 0, 0, 1.0);
  CHECK(angular_operator(x2, {0.0, 1.0, 0.0}).norm() == 0.0);

  const Polynomial3 xy = Polynomial3::monomial(1, 1, 0, 1.0);
  const Vec3 l = angular_operator(xy, {1.0, 0.0, 0.0});
  CHECK(l.x == 0.0);
  CHECK(l.y == 0.0);
  CHECK(l.z == doctest::Approx(1.0));
}

TEST_CASE("field rotation: identity, quarter turn, inverse, non-rotation") {
  const Polynomial3 x1 = Polynomial3::variable(0);
  CHECK(coefficient_distance(rotate_field(x1, Mat3::identity()), x1) == 0.0);

  // (R g)(x) = g(R^T x); for g = x1 and a quarter turn about the z axis the
  // pullback is x2.
  const Polynomial3 turned = rotate_field(x1, rotation_about_axis(2, kPi / 2));
  CHECK(coefficient_distance(turned, Polynomial3::variable(1)) < 1e-15);

  auto rng = testutil::make_rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial3 g = testutil::random_polynomial(rng, 6);
    const Mat3 R = testutil::random_rotation(rng);
    CHECK(coefficient_distance(rotate_field(rotate_field(g, R), R.transposed()),
                               g) < 1e-12);
  }

  Mat3 reflection = Mat3::identity();
  reflection.a[2][2] = -1.0;
  CHECK_THROWS_AS(rotate_field(x1, reflection), NotARotation);
  Mat3 scaled = Mat3::identity();
  scaled.a[0][0] = 2.0;
  CHECK_THROWS_AS(rotate_field(x1, scaled), NotARotation);
}

TEST_CASE("rotation equivariance of the transform") {
  const CircleRule rule(64);
  const Polynomial3 z2 = Polynomial3::monomial(0, 0, 2, 1.0);

  CHECK(check_rotation_equivariance(z2, Mat3::identity(), {0.3, -0.4, 0.86},
                                    rule) == 0.0);

  // Axisymmetric case: both routes equal pi (1 - L3^2).
  for (double alpha : {0.3, 1.2, 2.9})
    CHECK(check_rotation_equivariance(z2, rotation_about_axis(2, alpha),
                                      {0.0, 0.0, 1.0}, rule) < 1e-14);

  auto rng = testutil::make_rng(38);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial)
    worst = std::max(
        worst, check_rotation_equivariance(
                   testutil::random_polynomial(rng, 6),
                   testutil::random_rotation(rng), testutil::random_unit(rng),
                   rule));
  CHECK(worst < 1e-10);
}

TEST_CASE("commutation with infinitesimal rotations") {
  const CircleRule rule(64);

  // Rotating about the momentum itself leaves the circle invariant.
  const Polynomial3 even = Polynomial3::monomial(2, 0, 0, 1.0) +
                           Polynomial3::monomial(0, 2, 0, -0.5);
  CHECK(check_commutation(even, 2, {0.0, 0.0, 1.0}, rule, 1e-4) < 1e-10);

  // Odd fields: both sides vanish identically. The difference side divides
  // quadrature roundoff by 2h, hence the looser bound.
  const Polynomial3 odd = Polynomial3::monomial(1, 1, 1, 1.0) +
                          Polynomial3::monomial(0, 0, 3, -0.4);
  auto rng = testutil::make_rng(39);
  for (int trial = 0; trial < 10; ++trial)
    CHECK(check_commutation(odd, trial % 3, testutil::random_unit(rng), rule,
                            1e-4) < 1e-11);

  const Polynomial3 saddle = Polynomial3::monomial(2, 0, 0, 1.0) +
                             Polynomial3::monomial(0, 0, 2, -1.0);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(check_commutation(saddle, 0, testutil::random_unit(rng), rule,
                            1e-4) < 1e-7);

  CHECK_THROWS_AS(check_commutation(saddle, 0, {0, 0, 1}, rule, 1e-2),
                  std::invalid_argument);
}

TEST_CASE("commutation discrepancy scales as h^2") {
  // The residual is finite-difference truncation, so a Richardson pair at
  // coarse steps must predict the fine-step residual.
  const CircleRule rule(64);
  auto rng = testutil::make_rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial3 g = testutil::random_polynomial(rng, 5);
    const Vec3 L = testutil::random_unit(rng);
    const int axis = trial % 3;
    const double d_coarse = check_commutation(g, axis, L, rule, 1e-3);
    const double big_c = d_coarse / (1e-3 * 1e-3);
    const double d_fine = check_commutation(g, axis, L, rule, 1e-4);
    CHECK(d_fine <= 1.3 * big_c * 1e-8 + 1e-10);
  }
}

TEST_CASE("Legendre values at zero from the recurrence") {
  CHECK(legendre_p(0, 0.0) == 1.0);
  CHECK(legendre_p(1, 0.0) == 0.0);
  CHECK(legendre_p(2, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(legendre_p(3, 0.0) == 0.0);
  CHECK(legendre_p(4, 0.0) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(legendre_p(6, 0.0) == doctest::Approx(-5.0 / 16.0).epsilon(1e-15));
  CHECK(legendre_p(8, 0.0) == doctest::Approx(35.0 / 128.0).epsilon(1e-15));
  CHECK(legendre_p(5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("solid harmonics are eigenfunctions with eigenvalue 2 pi P_l(0)") {
  const CircleRule rule(64);

  // l = 0: the constant picks up the circumference.
  CHECK(std::abs(funk_transform(solid_harmonic(0, 0), Vec3{0.2, 0.5, -0.8},
                                rule) -
                 2.0 * kPi) < 1e-13);

  // l = 2: eigenvalue 2 pi P_2(0) = -pi.
  auto rng = testutil::make_rng(41);
  for (int m = -2; m <= 2; ++m) {
    const Polynomial3 y = solid_harmonic(2, m);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec3 L = testutil::random_unit(rng);
      CHECK(std::abs(funk_transform(y, L, rule) + kPi * y.eval(L)) < 1e-13);
    }
  }

  for (int l = 0; l <= 8; ++l)
    for (int m = -l; m <= l; ++m) {
      const double residual = funk_hecke_residual(l, m, rule);
      if (l % 2 == 0)
        CHECK(residual < 1e-10);
      else
        CHECK(residual < 1e-12);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geoflow/polynomial.hpp"
#include "test_helpers.hpp"

using namespace geoflow;

TEST_CASE("empty polynomial evaluates to zero everywhere") {
  const Polynomial3 p;
  CHECK(p.eval({0.3, -1.2, 0.7}) == 0.0);
  const Vec3 g = p.gradient({1.0, 2.0, 3.0});
  CHECK(g.norm() == 0.0);
  CHECK(p.total_degree() == -1);
}

TEST_CASE("monomial evaluation") {
  const Polynomial3 r2 = Polynomial3::monomial(2, 0, 0, 1.0) +
                         Polynomial3::monomial(0, 2, 0, 1.0) +
                         Polynomial3::monomial(0, 0, 2, 1.0);
  CHECK(r2.eval({1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(Polynomial3::monomial(0, 0, 3, 2.0).eval({0.0, 0.0, 0.5}) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("gradient of simple monomials") {
  const Polynomial3 z2 = Polynomial3::monomial(0, 0, 2, 1.0);
  const Vec3 g = z2.gradient({0.0, 0.0, 1.0});
  CHECK(g.x == 0.0);
  CHECK(g.y == 0.0);
  CHECK(g.z == doctest::Approx(2.0));
}

TEST_CASE("hessian of xy is the constant off-diagonal matrix") {
  const Polynomial3 xy = Polynomial3::monomial(1, 1, 0, 1.0);
  const Mat3 h = xy.hessian({0.37, -0.91, 2.4});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const bool off = (i == 0 && j == 1) || (i == 1 && j == 0);
      CHECK(h.a[i][j] == (off ? 1.0 : 0.0));
    }
}

TEST_CASE("gradient matches central differences of eval") {
  auto rng = testutil::make_rng(11);
  std::uniform_real_distribution<double> pos(-1.5, 1.5);
  const double h = 1e-4;
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial3 p = testutil::random_polynomial(rng, 4);
    const Vec3 x{pos(rng), pos(rng), pos(rng)};
    const Vec3 grad = p.gradient(x);
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (p.eval(xp) - p.eval(xm)) / (2.0 * h);
      CHECK(std::abs(fd - grad[k]) < 1e-6);
    }
  }
}

TEST_CASE("hessian matches central differences of the gradient") {
  auto rng = testutil::make_rng(12);
  std::uniform_real_distribution<double> pos(-1.5, 1.5);
  const double h = 1e-4;
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial3 p = testutil::random_polynomial(rng, 4);
    const Vec3 x{pos(rng), pos(rng), pos(rng)};
    const Mat3 hess = p.hessian(x);
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const Vec3 fd = (p.gradient(xp) - p.gradient(xm)) / (2.0 * h);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(fd[i] - hess.a[i][k]) < 1e-5);
    }
  }
}

TEST_CASE("hessian is exactly symmetric") {
  auto rng = testutil::make_rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial3 p = testutil::random_polynomial(rng, 6);
    const Mat3 h = p.hessian(testutil::random_unit(rng) * 1.3);
    CHECK(h.a[0][1] == h.a[1][0]);
    CHECK(h.a[0][2] == h.a[2][0]);
    CHECK(h.a[1][2] == h.a[2][1]);
  }
}

TEST_CASE("duplicate monomials merge and zeros drop") {
  const Polynomial3 p({{{1, 0, 0}, 2.0}, {{1, 0, 0}, 3.0}, {{0, 1, 0}, 0.0}});
  CHECK(p.term_count() == 1);
  CHECK(p.eval({1.0, 5.0, 0.0}) == doctest::Approx(5.0));
}

TEST_CASE("negative exponents are rejected") {
  CHECK_THROWS_AS(Polynomial3({{{-1, 0, 0}, 1.0}}), std::invalid_argument);
}

TEST_CASE("product expands degrees additively") {
  const Polynomial3 x = Polynomial3::variable(0);
  const Polynomial3 y = Polynomial3::variable(1);
  const Polynomial3 q = (x + y) * (x - y);
  CHECK(coefficient_distance(q, Polynomial3::monomial(2, 0, 0, 1.0) -
                                    Polynomial3::monomial(0, 2, 0, 1.0)) ==
        0.0);
}

TEST_CASE("linear substitution against pointwise composition") {
  auto rng = testutil::make_rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    const Polynomial3 p = testutil::random_polynomial(rng, 5);
    const Mat3 A = testutil::random_rotation(rng);
    const Polynomial3 q = p.substitute_linear(A);
    const Vec3 x = testutil::random_unit(rng) * 1.2;
    CHECK(q.eval(x) == doctest::Approx(p.eval(A * x)).epsilon(1e-12));
  }
}

TEST_CASE("substitution by R then R^T restores coefficients") {
  auto rng = testutil::make_rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const Polynomial3 p = testutil::random_polynomial(rng, 6);
    const Mat3 R = testutil::random_rotation(rng);
    const Polynomial3 back =
        p.substitute_linear(R).substitute_linear(R.transposed());
    CHECK(coefficient_distance(p, back) < 1e-12);
  }
}

TEST_CASE("angular component matches the pointwise cross product") {
  auto rng = testutil::make_rng(16);
  for (int trial = 0; trial < 25; ++trial) {
    const Polynomial3 p = testutil::random_polynomial(rng, 5);
    const Vec3 x = testutil::random_unit(rng) * 1.1;
    const Vec3 direct = cross(x, p.gradient(x));
    for (int axis = 0; axis < 3; ++axis)
      CHECK(angular_component(p, axis).eval(x) ==
            doctest::Approx(direct[axis]).epsilon(1e-12));
  }
}

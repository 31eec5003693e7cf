#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geoflow/errors.hpp"
#include "geoflow/polynomial.hpp"
#include "geoflow/surface.hpp"
#include "test_helpers.hpp"

using namespace geoflow;

TEST_CASE("phi on the round sphere") {
  const Surface s(0.0, Polynomial3());
  CHECK(s.phi({1.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(s.phi({0.0, 0.0, 2.0}) == doctest::Approx(3.0));
  const Vec3 g = s.phi_grad({1.0, 0.0, 0.0});
  CHECK(g.x == doctest::Approx(2.0));
  CHECK(g.y == 0.0);
  CHECK(g.z == 0.0);
}

TEST_CASE("phi with a z^2 deformation") {
  const Surface s(0.1, Polynomial3::monomial(0, 0, 2, 1.0));
  CHECK(s.phi({0.0, 0.0, 1.0}) == doctest::Approx(0.1));
  const Vec3 g = s.phi_grad({0.0, 0.0, 1.0});
  CHECK(g.z == doctest::Approx(2.2));
}

TEST_CASE("negative epsilon is rejected, large epsilon only warns") {
  CHECK_THROWS_AS(Surface(-0.1, Polynomial3()), std::invalid_argument);
  const Surface s(0.3, Polynomial3());
  CHECK(s.epsilon_above_asymptotic_range());
  CHECK_FALSE(Surface(0.05, Polynomial3()).epsilon_above_asymptotic_range());
}

TEST_CASE("deformation degree cap") {
  CHECK_THROWS_AS(Surface(0.1, Polynomial3::monomial(9, 0, 0, 1.0)),
                  std::invalid_argument);
  CHECK_NOTHROW(Surface(0.1, Polynomial3::monomial(9, 0, 0, 1.0), 10));
}

TEST_CASE("radial projection onto the round sphere") {
  const Surface s(0.0, Polynomial3());
  const Vec3 p = project_to_surface(s, {3.0, 4.0, 0.0});
  CHECK(p.x == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(p.z == 0.0);
}

TEST_CASE("projection onto the uniformly inflated sphere has analytic radius") {
  // phi = r^2 (1 + eps) - 1 = 0  =>  r = 1/sqrt(1.1)
  const Surface s(0.1, ellipsoid_psi(1.0, 1.0, 1.0));
  const Vec3 p = project_to_surface(s, {0.0, 0.0, 1.0});
  CHECK(p.z == doctest::Approx(1.0 / std::sqrt(1.1)).epsilon(1e-14));
}

TEST_CASE("projection postcondition and idempotency") {
  auto rng = testutil::make_rng(21);
  const Surface s(0.08, ellipsoid_psi(1.0, -0.5, 2.0));
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 dir = testutil::random_unit(rng) * 1.7;
    const Vec3 p = project_to_surface(s, dir);
    CHECK(std::abs(s.phi(p)) < 1e-12);
    const Vec3 q = project_to_surface(s, p);
    CHECK((p - q).norm() < 1e-12);
  }
}

TEST_CASE("projection reports an empty bracket") {
  // eps * psi = 8 x^2 keeps phi positive along the x axis on [0.5, 1.5].
  const Surface s(0.2, Polynomial3::monomial(2, 0, 0, 40.0), 8);
  CHECK_THROWS_AS(project_to_surface(s, {1.0, 0.0, 0.0}), NoRootInBracket);
  CHECK_THROWS_AS(project_to_surface(s, {0.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("solid harmonics are harmonic homogeneous polynomials") {
  for (int l = 0; l <= 8; ++l)
    for (int m = -l; m <= l; ++m) {
      const Polynomial3 y = solid_harmonic(l, m);
      for (const auto& t : y.terms())
        CHECK(t.e[0] + t.e[1] + t.e[2] == l);
      CHECK(coefficient_distance(laplacian(y), Polynomial3()) < 1e-10);
    }
}

TEST_CASE("low-degree solid harmonics match closed forms") {
  CHECK(coefficient_distance(solid_harmonic(0, 0), Polynomial3::constant(1.0)) ==
        0.0);
  CHECK(coefficient_distance(solid_harmonic(1, 0), Polynomial3::variable(2)) <
        1e-15);
  CHECK(coefficient_distance(solid_harmonic(1, 1), Polynomial3::variable(0)) <
        1e-15);
  CHECK(coefficient_distance(solid_harmonic(1, -1), Polynomial3::variable(1)) <
        1e-15);
  // S_20 = (3 z^2 - r^2)/2, S_22 = sqrt(3)/2 (x^2 - y^2), S_21 = sqrt(3) xz.
  const Polynomial3 s20 = Polynomial3::monomial(0, 0, 2, 1.0) +
                          Polynomial3::monomial(2, 0, 0, -0.5) +
                          Polynomial3::monomial(0, 2, 0, -0.5);
  CHECK(coefficient_distance(solid_harmonic(2, 0), s20) < 1e-15);
  const double c = std::sqrt(3.0) / 2.0;
  const Polynomial3 s22 = Polynomial3::monomial(2, 0, 0, c) +
                          Polynomial3::monomial(0, 2, 0, -c);
  CHECK(coefficient_distance(solid_harmonic(2, 2), s22) < 1e-15);
  CHECK(coefficient_distance(solid_harmonic(2, 1),
                             Polynomial3::monomial(1, 0, 1, std::sqrt(3.0))) <
        1e-15);
}

TEST_CASE("config parsing: explicit terms") {
  const Surface s = parse_surface_json(
      R"({"epsilon": 0.05, "psi": {"terms": [[2,0,0,1.0],[0,0,2,-1.0]]}})");
  CHECK(s.epsilon() == doctest::Approx(0.05));
  CHECK(s.psi().eval({1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(s.psi().eval({0.0, 0.0, 1.0}) == doctest::Approx(-1.0));
}

TEST_CASE("config parsing: presets") {
  const Surface e = parse_surface_json(
      R"({"epsilon": 0.05, "psi_preset": {"name": "ellipsoid", "params": [1,2,3]}})");
  CHECK(coefficient_distance(e.psi(), ellipsoid_psi(1, 2, 3)) == 0.0);
  const Surface h = parse_surface_json(
      R"({"epsilon": 0.02, "psi_preset": {"name": "harmonic", "params": [4, 2]}})");
  CHECK(coefficient_distance(h.psi(), solid_harmonic(4, 2)) == 0.0);
}

TEST_CASE("config parsing: malformed inputs raise ConfigError") {
  CHECK_THROWS_AS(parse_surface_json("not json"), ConfigError);
  CHECK_THROWS_AS(parse_surface_json(R"({"psi": {"terms": []}})"), ConfigError);
  CHECK_THROWS_AS(parse_surface_json(R"({"epsilon": 0.1})"), ConfigError);
  CHECK_THROWS_AS(
      parse_surface_json(R"({"epsilon": 0.1, "psi": {"terms": [[1,2,3]]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_surface_json(
          R"({"epsilon": 0.1, "psi": {"terms": [[-1,0,0,1.0]]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_surface_json(
          R"({"epsilon": -1, "psi": {"terms": []}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_surface_json(
          R"({"epsilon": 0.1, "psi_preset": {"name": "torus", "params": []}})"),
      ConfigError);
  CHECK_THROWS_AS(load_surface_file("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("surface JSON round-trip") {
  const Surface s(0.07, ellipsoid_psi(1.0, 2.5, -0.25));
  const Surface back = parse_surface_json(surface_to_json(s));
  CHECK(back.epsilon() == s.epsilon());
  CHECK(coefficient_distance(back.psi(), s.psi()) == 0.0);
}

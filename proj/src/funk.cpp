#include "geoflow/funk.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "geoflow/errors.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

CircleRule::CircleRule(int n_nodes) : n_(n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("quadrature needs >= 1 node");
  weight_ = kTwoPi / n_;
  t_.resize(n_);
  ct_.resize(n_);
  st_.resize(n_);
  for (int k = 0; k < n_; ++k) {
    t_[k] = kTwoPi * k / n_;
    ct_[k] = std::cos(t_[k]);
    st_[k] = std::sin(t_[k]);
  }
}

Frame orthonormal_frame(const Vec3& L) {
  if (L.norm() <= kZeroMomentumTol)
    throw ZeroMomentum("frame undefined for zero momentum");
  const Vec3 e3 = L.normalized();

  int seed_axis = 0;
  double best = std::abs(e3.x);
  if (std::abs(e3.y) < best) {
    best = std::abs(e3.y);
    seed_axis = 1;
  }
  if (std::abs(e3.z) < best) seed_axis = 2;
  Vec3 a;
  a[seed_axis] = 1.0;

  const Vec3 e1 = (a - dot(a, e3) * e3).normalized();
  const Vec3 e2 = cross(e3, e1);
  return {e1, e2, e3};
}

double funk_transform(const Polynomial3& g, const Frame& frame,
                      const CircleRule& rule) {
  double acc = 0.0;
  for (int k = 0; k < rule.n(); ++k)
    acc += g.eval(frame.e1 * rule.cosines()[k] + frame.e2 * rule.sines()[k]);
  return acc * rule.weight();
}

double funk_transform(const Polynomial3& g, const Vec3& L,
                      const CircleRule& rule) {
  return funk_transform(g, orthonormal_frame(L), rule);
}

Vec3 funk_transform_angular(const Polynomial3& g, const Vec3& L,
                            const CircleRule& rule) {
  const Frame f = orthonormal_frame(L);
  Vec3 acc;
  for (int k = 0; k < rule.n(); ++k) {
    const Vec3 x = f.e1 * rule.cosines()[k] + f.e2 * rule.sines()[k];
    acc += cross(x, g.gradient(x));
  }
  return acc * rule.weight();
}

Vec3 angular_operator(const Polynomial3& g, const Vec3& x) {
  return cross(x, g.gradient(x));
}

Polynomial3 rotate_field(const Polynomial3& g, const Mat3& R) {
  if (!is_rotation(R, kRotationTol))
    throw NotARotation("matrix is not orthogonal with determinant +1");
  return g.substitute_linear(R.transposed());
}

double check_rotation_equivariance(const Polynomial3& g, const Mat3& R,
                                   const Vec3& L, const CircleRule& rule) {
  const double lhs = funk_transform(g, R.transposed() * L, rule);
  const double rhs = funk_transform(rotate_field(g, R), L, rule);
  return std::abs(lhs - rhs);
}

double check_commutation(const Polynomial3& g, int axis, const Vec3& L,
                         const CircleRule& rule, double h) {
  if (!(h >= 1e-6 && h <= 1e-3))
    throw std::invalid_argument("commutation step h must lie in [1e-6, 1e-3]");
  const double lhs = funk_transform(angular_component(g, axis), L, rule);
  // l_i f(L) = d/da f(R_i(a) L) at a = 0.
  const double fp = funk_transform(g, rotation_about_axis(axis, h) * L, rule);
  const double fm = funk_transform(g, rotation_about_axis(axis, -h) * L, rule);
  const double rhs = (fp - fm) / (2.0 * h);
  return std::abs(lhs - rhs);
}

double legendre_p(int l, double x) {
  if (l < 0) throw std::invalid_argument("legendre_p needs l >= 0");
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int n = 1; n < l; ++n) {
    const double pn1 = ((2.0 * n + 1.0) * x * p - n * pm1) / (n + 1.0);
    pm1 = p;
    p = pn1;
  }
  return p;
}

double funk_hecke_residual(int l, int m, const CircleRule& rule, int n_samples,
                           std::uint64_t seed) {
  const Polynomial3 ylm = solid_harmonic(l, m);
  const double eigenvalue = kTwoPi * legendre_p(l, 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double max_residual = 0.0, max_value = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    Vec3 L{gauss(rng), gauss(rng), gauss(rng)};
    while (L.norm() < 1e-3) L = {gauss(rng), gauss(rng), gauss(rng)};
    L = L.normalized();
    const double transformed = funk_transform(ylm, L, rule);
    const double value = ylm.eval(L);
    max_residual = std::max(max_residual,
                            std::abs(transformed - eigenvalue * value));
    max_value = std::max(max_value, std::abs(value));
  }
  return max_residual / max_value;
}

}  // namespace geoflow

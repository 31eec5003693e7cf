#pragma once

#include <cstdint>
#include <vector>

#include "geoflow/defaults.hpp"
#include "geoflow/polynomial.hpp"
#include "geoflow/vec3.hpp"

namespace geoflow {

/// Right-handed orthonormal frame with e3 along the generating momentum.
struct Frame {
  Vec3 e1, e2, e3;
};

/// Equispaced periodic trapezoid rule on [0, 2pi). For a polynomial
/// integrand of degree d the rule is exact (up to roundoff) once n > d,
/// since the restriction to a great circle is a trigonometric polynomial
/// of the same degree.
class CircleRule {
 public:
  explicit CircleRule(int n_nodes = kDefaultCircleNodes);

  int n() const { return n_; }
  double weight() const { return weight_; }
  const std::vector<double>& nodes() const { return t_; }
  const std::vector<double>& cosines() const { return ct_; }
  const std::vector<double>& sines() const { return st_; }

 private:
  int n_;
  double weight_;
  std::vector<double> t_, ct_, st_;
};

/// Deterministic frame for momentum L: e3 = L/|L|; e1 is the normalized
/// rejection of the standard basis vector least aligned with e3; e2 = e3 x e1.
/// Throws ZeroMomentum for |L| <= 1e-12.
Frame orthonormal_frame(const Vec3& L);

/// Funk transform: integral of g over the unit great circle perpendicular
/// to L, evaluated with the given rule. Depends only on the direction of L.
double funk_transform(const Polynomial3& g, const Vec3& L, const CircleRule& rule);

/// Same integral with an explicitly supplied frame (the result must not
/// depend on the frame choice; this overload exists to test exactly that).
double funk_transform(const Polynomial3& g, const Frame& frame,
                      const CircleRule& rule);

/// Componentwise Funk transform of the vector field x x grad g.
Vec3 funk_transform_angular(const Polynomial3& g, const Vec3& L,
                            const CircleRule& rule);

/// Pointwise value of the operator l: x x grad g(x).
Vec3 angular_operator(const Polynomial3& g, const Vec3& x);

/// Pullback of g by a rotation: returns q with q(x) = g(R^T x), computed
/// exactly on coefficients. Throws NotARotation if R is not orthogonal
/// with determinant +1 (tolerance 1e-12).
Polynomial3 rotate_field(const Polynomial3& g, const Mat3& R);

/// |F g (R^-1 L) - F (R g) (L)|: the transform commutes with rotations, so
/// this should vanish up to quadrature roundoff.
double check_rotation_equivariance(const Polynomial3& g, const Mat3& R,
                                   const Vec3& L, const CircleRule& rule);

/// |F(l_i g)(L) - l_i(F g)(L)| with the right side evaluated by a central
/// difference of rotated arguments with angle step h in [1e-6, 1e-3].
/// Keeps the transform a black box on the right side.
double check_commutation(const Polynomial3& g, int axis, const Vec3& L,
                         const CircleRule& rule,
                         double h = kDefaultCommutationStep);

/// Legendre polynomial P_l(x) by the three-term recurrence.
double legendre_p(int l, double x);

/// Spectral residual of the transform on a solid harmonic: returns
/// max_i |F Y_lm(L_i) - 2 pi P_l(0) Y_lm(L_i)| / max_i |Y_lm(L_i)| over
/// n_samples seeded random unit directions. Small for even l; for odd l the
/// numerator itself must vanish.
double funk_hecke_residual(int l, int m, const CircleRule& rule,
                           int n_samples = 50, std::uint64_t seed = 20240601);

}  // namespace geoflow

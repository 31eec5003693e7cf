#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "geoflow/funk.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

/// Reduced Hamiltonian on the momentum sphere:
///   H(L) = (epsilon / 4 pi) * (F psi)(L),
/// the great-circle average of the deformation, scaled by the first-order
/// constraint multiplier -1/2 of unit-speed motion. Depends only on the
/// direction of L. Throws ZeroMomentum.
double hamiltonian(const Vec3& L, const Surface& s, const CircleRule& rule);

/// Averaged momentum field, quadrature form:
///   Ldot = -(epsilon / 4 pi) * (F (x x grad psi))(L).
/// This is the production right-hand side of the reduced flow.
Vec3 averaged_field_direct(const Vec3& L, const Surface& s,
                           const CircleRule& rule);

/// The same field in Hamiltonian form, Ldot = -L x grad H, with grad(F psi)
/// estimated by central differences of the transform (step h); diagonal
/// quadratic deformations use the closed-form H instead of differencing.
/// Agreement with averaged_field_direct *is* the transform/rotation
/// commutation identity, so the two routes cross-check each other.
Vec3 averaged_field_gradient(const Vec3& L, const Surface& s,
                             const CircleRule& rule,
                             double h = kDefaultGradStep);

/// Coefficients (a1,a2,a3) when psi is exactly a1 x^2 + a2 y^2 + a3 z^2;
/// nullopt otherwise.
std::optional<Vec3> diagonal_quadratic_axes(const Polynomial3& psi);

/// Closed-form H for the diagonal quadratic deformation:
/// (epsilon/4) * sum_i a_i (1 - u_i^2) with u = L/|L|.
double ellipsoid_hamiltonian(double epsilon, const Vec3& axes, const Vec3& L);

/// {L, G} from the angular-momentum structure constants
/// {L_i, L_j} = eps_ijk L_k; equals grad G x L.
Vec3 poisson_bracket_momentum(const Polynomial3& G, const Vec3& L);

/// Componentwise |{L, G} - (-L x grad G)|; both sides are exact algebra,
/// so this guards the sign conventions rather than any approximation.
Vec3 poisson_bracket_discrepancy(const Polynomial3& G, const Vec3& L);

struct ReducedPath {
  std::vector<double> times;
  std::vector<Vec3> points;
  // Largest | |L| change | in a single raw step, before renormalization;
  // the Casimir |L| is conserved by the flow, so this measures integrator
  // quality, not model error.
  double max_step_casimir_drift{0.0};
};

/// RK4 on the averaged field with the Casimir |L| renormalized to |L0|
/// after each step. H is deliberately not enforced. store_every selects
/// output decimation; the first and final states are always stored.
ReducedPath integrate_averaged(const Vec3& L0, const Surface& s, double t_end,
                               double dt, const CircleRule& rule,
                               int store_every = 1);

/// CSV with header t,L1,L2,L3,H at full double precision.
void write_reduced_csv(const ReducedPath& path, const Surface& s,
                       const CircleRule& rule, std::ostream& os);

}  // namespace geoflow

#pragma once

#include <ostream>
#include <vector>

#include "geoflow/surface.hpp"
#include "geoflow/vec3.hpp"

namespace geoflow {

struct ParticleState {
  Vec3 x;  // position on the surface
  Vec3 v;  // velocity, tangent to the surface
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ParticleState> states;
  std::vector<Vec3> momenta;  // x x v at each node
};

/// Constraint multiplier of the Lagrange equations of the first kind,
///   lambda = - (v . Hess(phi) v) / |grad phi|^2,
/// the unique value keeping d^2 phi/dt^2 = 0 along xdd = lambda grad phi.
/// On the round unit sphere at unit speed this is -1/2 (so the constraint
/// force lambda * grad phi is the centripetal -x, since grad phi = 2x).
/// Throws DegenerateGradient when |grad phi| < 1e-12.
double lagrange_multiplier(const ParticleState& state, const Surface& s);

/// Constraint acceleration lambda * grad phi.
Vec3 acceleration(const ParticleState& state, const Surface& s);

/// Angular momentum x x v.
Vec3 angular_momentum(const ParticleState& state);

/// Build an integration-ready state: project x0 radially onto the surface,
/// remove the normal component of v0, normalize to unit speed. Throws
/// std::invalid_argument when v0 is (numerically) parallel to the surface
/// normal, i.e. carries no tangential motion.
ParticleState make_surface_state(const Surface& s, const Vec3& x0,
                                 const Vec3& v0);

/// Throws std::invalid_argument unless |phi(x)| < tol, v is tangent to the
/// surface within tol (relative) and carries nonzero speed.
void validate_state(const ParticleState& state, const Surface& s,
                    double tol = kOnSurfaceTol);

struct IntegrationOptions {
  double dt = kDefaultDt;
  // 0 selects the default decimation ceil((1/dt)/256); 1 stores every step.
  int store_every = 0;
};

/// Fixed-step RK4 on (x, v) with post-step stabilization: x is projected
/// back to the surface, the grad-phi component of v is removed and |v| is
/// rescaled to its initial value (the averaging comparison assumes exact
/// unit speed). The final time t_end is hit exactly with one short step.
/// Throws StepTooLarge if a raw step leaves |phi| > 1e-3, and propagates
/// projection failures.
Trajectory integrate_trajectory(const ParticleState& start, const Surface& s,
                                double t_end,
                                const IntegrationOptions& opts = {});

/// CSV with header t,x1,x2,x3,v1,v2,v3,L1,L2,L3 at full double precision.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace geoflow

#include "geoflow/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "geoflow/errors.hpp"
#include "geoflow/io_util.hpp"

namespace geoflow {

double lagrange_multiplier(const ParticleState& state, const Surface& s) {
  const Vec3 grad = s.phi_grad(state.x);
  const double grad2 = grad.norm2();
  if (grad2 < kDegenerateGradientTol * kDegenerateGradientTol)
    throw DegenerateGradient("constraint gradient vanishes at this point");
  // Hess(phi) = 2 I + epsilon Hess(psi).
  const double curvature =
      2.0 * state.v.norm2() +
      s.epsilon() * quadratic_form(s.psi().hessian(state.x), state.v);
  return -curvature / grad2;
}

Vec3 acceleration(const ParticleState& state, const Surface& s) {
  return lagrange_multiplier(state, s) * s.phi_grad(state.x);
}

Vec3 angular_momentum(const ParticleState& state) {
  return cross(state.x, state.v);
}

ParticleState make_surface_state(const Surface& s, const Vec3& x0,
                                 const Vec3& v0) {
  const Vec3 x = project_to_surface(s, x0);
  const Vec3 n = s.phi_grad(x).normalized();
  const Vec3 vt = v0 - dot(v0, n) * n;
  if (vt.norm() < 1e-9 * std::max(1.0, v0.norm()))
    throw std::invalid_argument(
        "velocity is parallel to the surface normal; no tangential motion");
  return {x, vt.normalized()};
}

void validate_state(const ParticleState& state, const Surface& s, double tol) {
  if (std::abs(s.phi(state.x)) >= tol)
    throw std::invalid_argument("state is not on the surface");
  const Vec3 grad = s.phi_grad(state.x);
  const double vn = state.v.norm();
  if (!(vn > 0.0)) throw std::invalid_argument("state has zero velocity");
  if (std::abs(dot(state.v, grad)) / (vn * grad.norm()) >= tol)
    throw std::invalid_argument("velocity is not tangent to the surface");
  if (angular_momentum(state).norm() < 1e-9 * vn)
    throw std::invalid_argument("velocity is parallel to position");
}

namespace {

struct Derivative {
  Vec3 dx, dv;
};

Derivative eval_rhs(const ParticleState& y, const Surface& s) {
  return {y.v, acceleration(y, s)};
}

ParticleState advance(const ParticleState& y, const Derivative& d, double h) {
  return {y.x + d.dx * h, y.v + d.dv * h};
}

}  // namespace

Trajectory integrate_trajectory(const ParticleState& start, const Surface& s,
                                double t_end, const IntegrationOptions& opts) {
  if (!(opts.dt > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument("t_end and dt must be positive");
  validate_state(start, s);

  int store_every = opts.store_every;
  if (store_every <= 0)
    store_every = static_cast<int>(std::ceil((1.0 / opts.dt) / 256.0));

  const double speed = start.v.norm();

  Trajectory traj;
  auto store = [&](double t, const ParticleState& y) {
    traj.times.push_back(t);
    traj.states.push_back(y);
    traj.momenta.push_back(angular_momentum(y));
  };
  store(0.0, start);

  ParticleState y = start;
  const long long n_full = static_cast<long long>(t_end / opts.dt);
  const double remainder = t_end - n_full * opts.dt;
  const long long n_steps = n_full + (remainder > 1e-12 * t_end ? 1 : 0);

  for (long long step = 1; step <= n_steps; ++step) {
    const double h = (step <= n_full) ? opts.dt : remainder;

    const Derivative k1 = eval_rhs(y, s);
    const Derivative k2 = eval_rhs(advance(y, k1, h / 2.0), s);
    const Derivative k3 = eval_rhs(advance(y, k2, h / 2.0), s);
    const Derivative k4 = eval_rhs(advance(y, k3, h), s);
    y.x += (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx) * (h / 6.0);
    y.v += (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv) * (h / 6.0);

    if (std::abs(s.phi(y.x)) > kStepPhiLimit)
      throw StepTooLarge("raw step left |phi| > 1e-3; reduce dt");

    // Stabilization: back onto the surface, tangent, constant speed.
    y.x = project_to_surface(s, y.x);
    const Vec3 n = s.phi_grad(y.x).normalized();
    y.v -= dot(y.v, n) * n;
    y.v *= speed / y.v.norm();

    if (step % store_every == 0 || step == n_steps)
      store(step <= n_full ? step * opts.dt : t_end, y);
  }
  return traj;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,x1,x2,x3,v1,v2,v3,L1,L2,L3\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& st = traj.states[i];
    const auto& L = traj.momenta[i];
    os << fmt17(traj.times[i]) << ',' << fmt17(st.x.x) << ',' << fmt17(st.x.y)
       << ',' << fmt17(st.x.z) << ',' << fmt17(st.v.x) << ',' << fmt17(st.v.y)
       << ',' << fmt17(st.v.z) << ',' << fmt17(L.x) << ',' << fmt17(L.y) << ','
       << fmt17(L.z) << '\n';
  }
}

}  // namespace geoflow

#include "geoflow/averaged.hpp"

#include <cmath>
#include <stdexcept>

#include "geoflow/errors.hpp"
#include "geoflow/io_util.hpp"

namespace geoflow {

namespace {
constexpr double kFourPi = 12.566370614359172953850573533118;
}

double hamiltonian(const Vec3& L, const Surface& s, const CircleRule& rule) {
  return (s.epsilon() / kFourPi) * funk_transform(s.psi(), L, rule);
}

Vec3 averaged_field_direct(const Vec3& L, const Surface& s,
                           const CircleRule& rule) {
  return funk_transform_angular(s.psi(), L, rule) * (-s.epsilon() / kFourPi);
}

std::optional<Vec3> diagonal_quadratic_axes(const Polynomial3& psi) {
  Vec3 axes;
  for (const auto& t : psi.terms()) {
    if (t.e == std::array<int, 3>{2, 0, 0})
      axes.x = t.c;
    else if (t.e == std::array<int, 3>{0, 2, 0})
      axes.y = t.c;
    else if (t.e == std::array<int, 3>{0, 0, 2})
      axes.z = t.c;
    else
      return std::nullopt;
  }
  return axes;
}

double ellipsoid_hamiltonian(double epsilon, const Vec3& axes, const Vec3& L) {
  const Vec3 u = L.normalized();
  return 0.25 * epsilon *
         (axes.x * (1.0 - u.x * u.x) + axes.y * (1.0 - u.y * u.y) +
          axes.z * (1.0 - u.z * u.z));
}

Vec3 averaged_field_gradient(const Vec3& L, const Surface& s,
                             const CircleRule& rule, double h) {
  if (L.norm() <= kZeroMomentumTol)
    throw ZeroMomentum("averaged field undefined for zero momentum");

  if (const auto axes = diagonal_quadratic_axes(s.psi())) {
    // -L x grad H evaluated on the closed-form quadratic H.
    const Vec3 u = L.normalized();
    const Vec3 au{axes->x * u.x, axes->y * u.y, axes->z * u.z};
    return 0.5 * s.epsilon() * cross(u, au);
  }

  if (!(h > 0.0)) throw std::invalid_argument("gradient step must be positive");
  Vec3 grad;
  for (int k = 0; k < 3; ++k) {
    Vec3 lp = L, lm = L;
    lp[k] += h;
    lm[k] -= h;
    grad[k] = (funk_transform(s.psi(), lp, rule) -
               funk_transform(s.psi(), lm, rule)) /
              (2.0 * h);
  }
  return cross(L, grad) * (-s.epsilon() / kFourPi);
}

Vec3 poisson_bracket_momentum(const Polynomial3& G, const Vec3& L) {
  static constexpr int eps_ijk[3][3][3] = {
      {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  const Vec3 g = G.gradient(L);
  Vec3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i] += eps_ijk[i][j][k] * g[j] * L[k];
  return out;
}

Vec3 poisson_bracket_discrepancy(const Polynomial3& G, const Vec3& L) {
  const Vec3 a = poisson_bracket_momentum(G, L);
  const Vec3 b = -1.0 * cross(L, G.gradient(L));
  return {std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)};
}

ReducedPath integrate_averaged(const Vec3& L0, const Surface& s, double t_end,
                               double dt, const CircleRule& rule,
                               int store_every) {
  if (L0.norm() <= kZeroMomentumTol)
    throw ZeroMomentum("cannot integrate zero momentum");
  if (!(dt > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument("t_end and dt must be positive");
  if (store_every < 1) store_every = 1;

  const double radius = L0.norm();
  const auto field = [&](const Vec3& L) {
    return averaged_field_direct(L, s, rule);
  };

  ReducedPath path;
  path.times.push_back(0.0);
  path.points.push_back(L0);

  Vec3 L = L0;
  const long long n_full = static_cast<long long>(t_end / dt);
  const double remainder = t_end - n_full * dt;
  const long long n_steps = n_full + (remainder > 1e-12 * t_end ? 1 : 0);

  for (long long step = 1; step <= n_steps; ++step) {
    const double h = (step <= n_full) ? dt : remainder;
    const Vec3 k1 = field(L);
    const Vec3 k2 = field(L + k1 * (h / 2.0));
    const Vec3 k3 = field(L + k2 * (h / 2.0));
    const Vec3 k4 = field(L + k3 * h);
    const Vec3 raw = L + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);

    path.max_step_casimir_drift = std::max(
        path.max_step_casimir_drift, std::abs(raw.norm() - L.norm()));
    L = raw.normalized() * radius;

    if (step % store_every == 0 || step == n_steps) {
      path.times.push_back(step <= n_full ? step * dt : t_end);
      path.points.push_back(L);
    }
  }
  return path;
}

void write_reduced_csv(const ReducedPath& path, const Surface& s,
                       const CircleRule& rule, std::ostream& os) {
  os << "t,L1,L2,L3,H\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const Vec3& L = path.points[i];
    os << fmt17(path.times[i]) << ',' << fmt17(L.x) << ',' << fmt17(L.y) << ','
       << fmt17(L.z) << ',' << fmt17(hamiltonian(L, s, rule)) << '\n';
  }
}

}  // namespace geoflow

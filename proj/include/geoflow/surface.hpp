#pragma once

#include <string>

#include "geoflow/defaults.hpp"
#include "geoflow/polynomial.hpp"
#include "geoflow/vec3.hpp"

namespace geoflow {

/// Implicit surface phi(x) = x.x - 1 + epsilon * psi(x), a weak polynomial
/// deformation of the unit sphere. Immutable after construction; all
/// operations are pure and safe to share across threads.
class Surface {
 public:
  Surface() = default;
  Surface(double epsilon, Polynomial3 psi,
          int max_degree = kDefaultMaxPsiDegree);

  double epsilon() const { return epsilon_; }
  const Polynomial3& psi() const { return psi_; }

  // The asymptotic reduction assumes small epsilon; above this threshold
  // results are still computed but should not be trusted quantitatively.
  bool epsilon_above_asymptotic_range() const {
    return epsilon_ > kEpsilonWarnThreshold;
  }

  double phi(const Vec3& x) const;
  Vec3 phi_grad(const Vec3& x) const;  // 2x + epsilon * grad psi

 private:
  double epsilon_{0.0};
  Polynomial3 psi_;
};

/// Radial projection of x0 onto phi = 0: returns r * x0/|x0| with
/// |phi(result)| < 1e-12, r found by safeguarded Newton in [0.5, 1.5].
/// Throws NoRootInBracket when the bracket does not enclose a root.
Vec3 project_to_surface(const Surface& s, const Vec3& x0);

/// psi = a1 x^2 + a2 y^2 + a3 z^2.
Polynomial3 ellipsoid_psi(double a1, double a2, double a3);

/// Real solid harmonic of degree l and order m (Racah normalization):
/// a harmonic homogeneous polynomial that restricts to the real spherical
/// harmonic on the unit sphere, up to the constant sqrt(4 pi / (2l+1)).
Polynomial3 solid_harmonic(int l, int m);

/// Parse a surface config: {"epsilon": e, "psi": {"terms": [[i,j,k,c],...]}}
/// or {"epsilon": e, "psi_preset": {"name": "ellipsoid"|"harmonic",
/// "params": [...]}}. Throws ConfigError on malformed input.
Surface parse_surface_json(const std::string& text);
Surface load_surface_file(const std::string& path);

/// Canonical JSON text for a surface (terms form, shortest round-trip reals).
std::string surface_to_json(const Surface& s);

}  // namespace geoflow

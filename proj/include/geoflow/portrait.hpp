#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "geoflow/averaged.hpp"

namespace geoflow {

/// Reduced Hamiltonian sampled on an inclusive colatitude x periodic
/// longitude grid: theta_i = i*pi/(n_theta-1), phi_j = 2*pi*j/n_phi.
/// Pole rows hold the pole value replicated across all longitudes.
struct PortraitGrid {
  int n_theta{0}, n_phi{0};
  std::vector<double> values;  // row-major [i_theta][j_phi]
  Surface surface;
  CircleRule rule{kDefaultCircleNodes};

  double theta(int i) const;
  double phi(int j) const;
  Vec3 point(int i, int j) const;
  double value(int i, int j) const { return values[i * n_phi + j]; }
};

PortraitGrid sample_grid(const Surface& s, int n_theta, int n_phi,
                         const CircleRule& rule, int threads = 1);

enum class CriticalKind { minimum, maximum, saddle };

struct CriticalPoint {
  Vec3 location;  // unit vector
  double value;
  CriticalKind kind;
};

struct CriticalPointSet {
  std::vector<CriticalPoint> points;
  // Refined stationary points whose tangent Hessian is too singular to
  // classify (|det| < 1e-10); reported but excluded from Morse counts.
  std::vector<Vec3> degenerate;
  // Set when the sampled field has no usable variation (H constant).
  bool flat{false};
};

/// Grid extrema (8-neighbor comparison) and saddles (sign changes of the
/// neighbor differences around the 8-cycle), refined by Newton on the
/// smooth H in the tangent plane and classified by the tangent-Hessian
/// eigenvalue signs. Antipodal partners are completed (H is even) and
/// near-duplicates merged.
CriticalPointSet find_critical_points(const PortraitGrid& grid);

struct ContourLevel {
  double level;
  std::vector<std::vector<Vec3>> polylines;  // closed loops repeat the head
};

using ContourSet = std::vector<ContourLevel>;

/// Marching squares with linear interpolation on the (theta, phi) grid;
/// the phi = 0/2pi seam is wrapped, pole rows are constant so no contour
/// crosses them. Each vertex receives one Newton projection step toward
/// its level on the smooth H. Levels outside the sampled range produce
/// empty line sets.
ContourSet extract_contours(const PortraitGrid& grid,
                            const std::vector<double>& levels);

enum class PortraitFormat { json, csv, svg };

/// Accepts "json", "csv" or "svg"; throws UnsupportedFormat otherwise.
PortraitFormat parse_portrait_format(const std::string& name);

void emit_portrait(const PortraitGrid& grid, const ContourSet& contours,
                   const CriticalPointSet& critical, PortraitFormat format,
                   std::ostream& os);

}  // namespace geoflow

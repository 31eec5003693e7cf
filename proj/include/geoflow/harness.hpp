#pragma once

#include <ostream>
#include <vector>

#include "geoflow/averaged.hpp"
#include "geoflow/dynamics.hpp"

namespace geoflow {

struct ComparisonConfig {
  double t_end = 100.0;
  double dt_full = kDefaultDt;
  double dt_avg = 0.05;
  double sample_dt = 0.5;  // matched-time sampling interval
  int n_nodes = kDefaultCircleNodes;
};

/// Full geodesic dynamics versus the averaged momentum flow, compared as
/// unit directions (|L| of the true motion fluctuates at O(epsilon), so
/// only the direction is meaningful; the raw norms are kept as a
/// diagnostic series).
struct ComparisonReport {
  double epsilon{};
  double t_end{}, dt_full{}, dt_avg{}, sample_dt{};
  int n_nodes{};
  ParticleState start;
  std::vector<double> times;
  std::vector<double> direction_error;  // radians
  std::vector<double> full_momentum_norm;
  double max_direction_error{};
};

ComparisonReport compare_full_vs_averaged(const Surface& s,
                                          const ParticleState& start,
                                          const ComparisonConfig& cfg);

struct StudyRow {
  double epsilon;
  double t_end;
  double max_direction_error;
  double ratio;  // error relative to the previous (larger-epsilon) row
};

/// Runs compare_full_vs_averaged for each epsilon over the scaled horizon
/// t_end = c / epsilon, holding the deformation shape and the start
/// direction fixed (the start state is re-projected onto each surface).
std::vector<StudyRow> epsilon_convergence_study(
    const Polynomial3& psi, const std::vector<double>& eps_list,
    const Vec3& x0, const Vec3& v0, double c, const ComparisonConfig& base);

void write_report_json(const ComparisonReport& report, std::ostream& os);
void write_study_csv(const std::vector<StudyRow>& rows, std::ostream& os);

}  // namespace geoflow

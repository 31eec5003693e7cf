#include "geoflow/harness.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "geoflow/io_util.hpp"

namespace geoflow {

ComparisonReport compare_full_vs_averaged(const Surface& s,
                                          const ParticleState& start,
                                          const ComparisonConfig& cfg) {
  const CircleRule rule(cfg.n_nodes);

  IntegrationOptions opts;
  opts.dt = cfg.dt_full;
  opts.store_every =
      std::max(1, static_cast<int>(std::llround(cfg.sample_dt / cfg.dt_full)));
  const Trajectory full = integrate_trajectory(start, s, cfg.t_end, opts);

  const int store_avg =
      std::max(1, static_cast<int>(std::llround(cfg.sample_dt / cfg.dt_avg)));
  const Vec3 L0 = angular_momentum(start);
  const ReducedPath reduced =
      integrate_averaged(L0, s, cfg.t_end, cfg.dt_avg, rule, store_avg);

  ComparisonReport report;
  report.epsilon = s.epsilon();
  report.t_end = cfg.t_end;
  report.dt_full = cfg.dt_full;
  report.dt_avg = cfg.dt_avg;
  report.sample_dt = cfg.sample_dt;
  report.n_nodes = cfg.n_nodes;
  report.start = start;

  const std::size_t n =
      std::min(full.times.size(), reduced.times.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(full.times[k] - reduced.times[k]) > 1e-9)
      throw std::logic_error("comparison sampling times diverged");
    const double err =
        angle_between(full.momenta[k].normalized(),
                      reduced.points[k].normalized());
    report.times.push_back(full.times[k]);
    report.direction_error.push_back(err);
    report.full_momentum_norm.push_back(full.momenta[k].norm());
    report.max_direction_error = std::max(report.max_direction_error, err);
  }
  return report;
}

std::vector<StudyRow> epsilon_convergence_study(
    const Polynomial3& psi, const std::vector<double>& eps_list,
    const Vec3& x0, const Vec3& v0, double c, const ComparisonConfig& base) {
  std::vector<StudyRow> rows;
  double previous = 0.0;
  for (double eps : eps_list) {
    const Surface s(eps, psi);
    const ParticleState start = make_surface_state(s, x0, v0);
    ComparisonConfig cfg = base;
    cfg.t_end = (eps > 0.0) ? c / eps : base.t_end;
    const ComparisonReport report = compare_full_vs_averaged(s, start, cfg);
    StudyRow row{eps, cfg.t_end, report.max_direction_error, 0.0};
    if (!rows.empty() && previous > 0.0)
      row.ratio = report.max_direction_error / previous;
    previous = report.max_direction_error;
    rows.push_back(row);
  }
  return rows;
}

void write_report_json(const ComparisonReport& report, std::ostream& os) {
  nlohmann::json j;
  j["epsilon"] = report.epsilon;
  j["t_end"] = report.t_end;
  j["dt_full"] = report.dt_full;
  j["dt_avg"] = report.dt_avg;
  j["sample_dt"] = report.sample_dt;
  j["n_nodes"] = report.n_nodes;
  j["start"] = {
      {"x", {report.start.x.x, report.start.x.y, report.start.x.z}},
      {"v", {report.start.v.x, report.start.v.y, report.start.v.z}}};
  j["times"] = report.times;
  j["direction_error"] = report.direction_error;
  j["full_momentum_norm"] = report.full_momentum_norm;
  j["max_direction_error"] = report.max_direction_error;
  j["environment"] = {{"compiler", __VERSION__}};
  os << j.dump();
}

void write_study_csv(const std::vector<StudyRow>& rows, std::ostream& os) {
  os << "epsilon,t_end,max_direction_error,ratio\n";
  for (const auto& r : rows)
    os << fmt17(r.epsilon) << ',' << fmt17(r.t_end) << ','
       << fmt17(r.max_direction_error) << ','
       << (r.ratio > 0.0 ? fmt17(r.ratio) : std::string("")) << '\n';
}

}  // namespace geoflow

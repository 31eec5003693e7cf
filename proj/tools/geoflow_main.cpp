// Command-line front end: one subcommand per pipeline stage.
//   simulate   full constrained geodesic dynamics -> trajectory CSV
//   average    reduced momentum flow -> path CSV
//   portrait   Hamiltonian portrait on the momentum sphere -> json/csv/svg
//   compare    full vs averaged momentum comparison -> report JSON
//   funk-test  diagnostic table of transform identities
// Exit codes: 0 success, 1 validation/check failure, 2 usage/config error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geoflow/averaged.hpp"
#include "geoflow/defaults.hpp"
#include "geoflow/dynamics.hpp"
#include "geoflow/errors.hpp"
#include "geoflow/funk.hpp"
#include "geoflow/harness.hpp"
#include "geoflow/portrait.hpp"
#include "geoflow/surface.hpp"

namespace {

using namespace geoflow;

Vec3 parse_triple(const std::string& text, const char* what) {
  Vec3 v;
  char extra;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &v.x, &v.y, &v.z, &extra) != 3)
    throw ConfigError(std::string(what) + " must be three comma-separated reals");
  return v;
}

Surface load_config_or_die(const std::string& path) {
  const Surface s = load_surface_file(path);
  if (s.epsilon_above_asymptotic_range())
    std::cerr << "warning: epsilon = " << s.epsilon() << " exceeds "
              << kEpsilonWarnThreshold
              << "; the averaged description assumes a weak deformation\n";
  return s;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

int cmd_simulate(const std::string& config, const std::string& out_path,
                 double t_end, double dt, const std::string& x0s,
                 const std::string& v0s) {
  const Surface s = load_config_or_die(config);
  const ParticleState start =
      make_surface_state(s, parse_triple(x0s, "--x0"), parse_triple(v0s, "--v0"));
  IntegrationOptions opts;
  opts.dt = dt;
  const Trajectory traj = integrate_trajectory(start, s, t_end, opts);
  auto out = open_output(out_path);
  write_trajectory_csv(traj, out);
  std::cerr << "wrote " << traj.times.size() << " nodes to " << out_path
            << "\n";
  return 0;
}

int cmd_average(const std::string& config, const std::string& out_path,
                double t_end, double dt, int nodes, const std::string& l0s) {
  const Surface s = load_config_or_die(config);
  const CircleRule rule(nodes);
  const ReducedPath path =
      integrate_averaged(parse_triple(l0s, "--L0"), s, t_end, dt, rule);
  auto out = open_output(out_path);
  write_reduced_csv(path, s, rule, out);
  std::cerr << "wrote " << path.times.size() << " nodes to " << out_path
            << "\n";
  return 0;
}

int cmd_portrait(const std::string& config, const std::string& out_path,
                 const std::string& format_name, const std::string& resolution,
                 int nodes, int n_levels, int threads) {
  const PortraitFormat format = parse_portrait_format(format_name);
  const Surface s = load_config_or_die(config);
  int nt = 0, np = 0;
  char extra;
  if (std::sscanf(resolution.c_str(), "%d,%d%c", &nt, &np, &extra) != 2)
    throw ConfigError("--resolution must be T,P");
  const CircleRule rule(nodes);
  const PortraitGrid grid = sample_grid(s, nt, np, rule, threads);
  const CriticalPointSet critical = find_critical_points(grid);
  if (critical.flat)
    std::cerr << "note: Hamiltonian has no variation on this grid; "
                 "portrait is degenerate\n";
  for (const auto& p : critical.degenerate)
    std::cerr << "note: degenerate critical point near " << p << "\n";

  double vmin = grid.values[0], vmax = grid.values[0];
  for (double v : grid.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  std::vector<double> levels;
  for (int k = 1; k <= n_levels; ++k)
    levels.push_back(vmin + (vmax - vmin) * k / (n_levels + 1.0));
  const ContourSet contours = extract_contours(grid, levels);

  auto out = open_output(out_path);
  emit_portrait(grid, contours, critical, format, out);
  std::cerr << "wrote portrait (" << critical.points.size()
            << " critical points, " << levels.size() << " levels) to "
            << out_path << "\n";
  return 0;
}

int cmd_compare(const std::string& config, const std::string& out_path,
                double t_end, double dt, double dt_avg, double sample_dt,
                int nodes, const std::string& x0s, const std::string& v0s,
                const std::string& study_eps, double horizon_c) {
  const Surface s = load_config_or_die(config);
  const Vec3 x0 = parse_triple(x0s, "--x0"), v0 = parse_triple(v0s, "--v0");

  ComparisonConfig cfg;
  cfg.t_end = t_end;
  cfg.dt_full = dt;
  cfg.dt_avg = dt_avg;
  cfg.sample_dt = sample_dt;
  cfg.n_nodes = nodes;

  if (!study_eps.empty()) {
    std::vector<double> eps_list;
    std::stringstream ss(study_eps);
    std::string item;
    while (std::getline(ss, item, ','))
      eps_list.push_back(std::stod(item));
    const auto rows =
        epsilon_convergence_study(s.psi(), eps_list, x0, v0, horizon_c, cfg);
    auto out = open_output(out_path);
    write_study_csv(rows, out);
    for (const auto& r : rows)
      std::cerr << "epsilon " << r.epsilon << ": max direction error "
                << r.max_direction_error << " rad over t = " << r.t_end
                << "\n";
    return 0;
  }

  const ParticleState start = make_surface_state(s, x0, v0);
  const ComparisonReport report = compare_full_vs_averaged(s, start, cfg);
  auto out = open_output(out_path);
  write_report_json(report, out);
  std::cerr << "max direction error " << report.max_direction_error
            << " rad over t = " << report.t_end << "\n";
  return 0;
}

struct CheckRow {
  std::string name;
  double discrepancy;
  double tolerance;
};

int cmd_funk_test(int nodes, std::uint64_t seed) {
  const CircleRule rule(nodes);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  auto random_unit = [&]() {
    Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    while (v.norm() < 1e-3) v = {gauss(rng), gauss(rng), gauss(rng)};
    return v.normalized();
  };
  auto random_poly = [&](int max_degree, double scale) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Polynomial3::Term> terms;
    for (int t = 0; t < 6; ++t) {
      const int i = deg(rng), j = deg(rng), k = deg(rng);
      if (i + j + k > max_degree) continue;
      terms.push_back({{i, j, k}, scale * unit(rng)});
    }
    return Polynomial3(terms);
  };
  auto random_rotation = [&]() {
    return rotation_axis_angle(random_unit(), 3.14159 * unit(rng));
  };

  std::vector<CheckRow> rows;
  const Polynomial3 one = Polynomial3::constant(1.0);
  const Polynomial3 z2 = Polynomial3::monomial(0, 0, 2, 1.0);

  {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s)
      worst = std::max(worst, std::abs(funk_transform(one, random_unit(), rule) -
                                       2.0 * 3.1415926535897932384626433832795));
    rows.push_back({"constant integrates to 2*pi", worst, 1e-13});
  }
  {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const Vec3 L = random_unit();
      const double expected =
          3.1415926535897932384626433832795 * (1.0 - L.z * L.z);
      worst = std::max(worst, std::abs(funk_transform(z2, L, rule) - expected));
    }
    rows.push_back({"x3^2 matches pi (1 - L3^2)", worst, 1e-12});
  }
  {
    double worst = 0.0;
    for (int d = 1; d <= 7; d += 2)
      for (int i = 0; i <= d; ++i)
        for (int j = 0; j + i <= d; ++j) {
          const Polynomial3 mono = Polynomial3::monomial(i, j, d - i - j, 1.0);
          for (int s = 0; s < 5; ++s)
            worst = std::max(
                worst, std::abs(funk_transform(mono, random_unit(), rule)));
        }
    rows.push_back({"odd monomials map to zero", worst, 1e-12});
  }
  {
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const Polynomial3 g = random_poly(6, 1.0);
      const Vec3 L = random_unit();
      worst = std::max(worst, std::abs(funk_transform(g, L, rule) -
                                       funk_transform(g, -1.0 * L, rule)));
    }
    rows.push_back({"even image: Fg(-L) = Fg(L)", worst, 1e-12});
  }
  {
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const Polynomial3 g = random_poly(6, 1.0), h = random_poly(6, 1.0);
      const double alpha = unit(rng), beta = unit(rng);
      const Vec3 L = random_unit();
      const double lhs = funk_transform(g * alpha + h * beta, L, rule);
      const double rhs = alpha * funk_transform(g, L, rule) +
                         beta * funk_transform(h, L, rule);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rows.push_back({"linearity", worst, 1e-12});
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    for (int s = 0; s < 50; ++s) {
      const Polynomial3 g = random_poly(6, 1.0);
      const Vec3 L = random_unit();
      const Frame f = orthonormal_frame(L);
      const double beta = angle(rng);
      const Frame rotated{f.e1 * std::cos(beta) + f.e2 * std::sin(beta),
                          f.e2 * std::cos(beta) - f.e1 * std::sin(beta), f.e3};
      worst = std::max(worst, std::abs(funk_transform(g, L, rule) -
                                       funk_transform(g, rotated, rule)));
    }
    rows.push_back({"frame independence", worst, 1e-12});
  }
  {
    double worst = 0.0;
    for (int d = 1; d <= 6; ++d) {
      const Polynomial3 g = random_poly(d, 1.0);
      const Vec3 L = random_unit();
      const double coarse = funk_transform(g, L, CircleRule(d + 2));
      const double fine = funk_transform(g, L, CircleRule(4 * (d + 2)));
      worst = std::max(worst, std::abs(coarse - fine));
    }
    rows.push_back({"quadrature exactness (d+2 vs 4(d+2) nodes)", worst, 1e-13});
  }
  {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s)
      worst = std::max(worst,
                       check_rotation_equivariance(random_poly(6, 1.0),
                                                   random_rotation(),
                                                   random_unit(), rule));
    rows.push_back({"rotation equivariance", worst, 1e-10});
  }
  {
    double worst = 0.0;
    std::uniform_int_distribution<int> axis(0, 2);
    for (int s = 0; s < 50; ++s)
      worst = std::max(worst,
                       check_commutation(random_poly(4, 0.25), axis(rng),
                                         random_unit(), rule, 1e-4));
    rows.push_back({"commutation with infinitesimal rotations", worst, 1e-8});
  }
  {
    double worst_even = 0.0, worst_odd = 0.0;
    for (int l = 0; l <= 8; ++l)
      for (int m = -l; m <= l; ++m) {
        const double r = funk_hecke_residual(l, m, rule);
        (l % 2 == 0 ? worst_even : worst_odd) = std::max(
            l % 2 == 0 ? worst_even : worst_odd, r);
      }
    rows.push_back({"harmonic eigenvalues 2*pi*P_l(0), even l <= 8",
                    worst_even, 1e-10});
    rows.push_back({"harmonic kernel, odd l <= 8", worst_odd, 1e-10});
  }

  bool all_pass = true;
  std::printf("%-48s %14s %10s  %s\n", "check", "discrepancy", "tolerance",
              "result");
  for (const auto& row : rows) {
    const bool pass = row.discrepancy < row.tolerance;
    all_pass &= pass;
    std::printf("%-48s %14.3e %10.1e  %s\n", row.name.c_str(),
                row.discrepancy, row.tolerance, pass ? "PASS" : "FAIL");
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic flow on weakly deformed spheres and its averaged "
               "momentum dynamics"};
  app.require_subcommand(1);
  app.footer(
      "Defaults: dt = 1e-3, quadrature nodes = 64, portrait grid = 181,360,\n"
      "gradient step = 1e-5, commutation step = 1e-4, epsilon warning "
      "threshold = 0.2.");

  std::string config, out_path, format = "json", resolution = "181,360";
  std::string x0 = "1,0,0", v0 = "0,1,0", l0 = "0,0,1", study_eps;
  double t_end = 100.0, dt = geoflow::kDefaultDt, dt_avg = 0.05;
  double sample_dt = 0.5, horizon_c = 2.0;
  int nodes = geoflow::kDefaultCircleNodes, levels = 12, threads = 1;
  std::uint64_t seed = 20240601;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", config, "surface config JSON path")
        ->required();
    if (needs_out)
      sub->add_option("--out", out_path, "output file path")->required();
  };

  auto* simulate = app.add_subcommand(
      "simulate", "integrate the full constrained geodesic dynamics");
  add_common(simulate, true);
  simulate->add_option("--t-end", t_end, "integration horizon")
      ->capture_default_str();
  simulate->add_option("--dt", dt, "time step")->capture_default_str();
  simulate->add_option("--x0", x0, "start position, projected to the surface")
      ->capture_default_str();
  simulate->add_option("--v0", v0, "start velocity, tangentialized")
      ->capture_default_str();

  auto* average =
      app.add_subcommand("average", "integrate the averaged momentum flow");
  add_common(average, true);
  average->add_option("--t-end", t_end, "integration horizon")
      ->capture_default_str();
  average->add_option("--dt", dt_avg, "time step")->capture_default_str();
  average->add_option("--nodes", nodes, "great-circle quadrature nodes")
      ->capture_default_str();
  average->add_option("--L0", l0, "initial momentum")->capture_default_str();

  auto* portrait = app.add_subcommand(
      "portrait", "sample the reduced Hamiltonian and extract its portrait");
  add_common(portrait, true);
  portrait->add_option("--format", format, "json | csv | svg")
      ->capture_default_str();
  portrait->add_option("--resolution", resolution, "grid as T,P")
      ->capture_default_str();
  portrait->add_option("--nodes", nodes, "great-circle quadrature nodes")
      ->capture_default_str();
  portrait->add_option("--levels", levels, "number of contour levels")
      ->capture_default_str();
  portrait->add_option("--threads", threads, "sampling threads")
      ->capture_default_str();

  auto* compare = app.add_subcommand(
      "compare", "compare full dynamics against the averaged flow");
  add_common(compare, true);
  compare->add_option("--t-end", t_end, "comparison horizon")
      ->capture_default_str();
  compare->add_option("--dt", dt, "full-dynamics step")->capture_default_str();
  compare->add_option("--dt-avg", dt_avg, "averaged-flow step")
      ->capture_default_str();
  compare->add_option("--sample-dt", sample_dt, "matched sampling interval")
      ->capture_default_str();
  compare->add_option("--nodes", nodes, "great-circle quadrature nodes")
      ->capture_default_str();
  compare->add_option("--x0", x0, "start position")->capture_default_str();
  compare->add_option("--v0", v0, "start velocity")->capture_default_str();
  compare->add_option("--study-eps", study_eps,
                      "comma-separated epsilon list; runs the convergence "
                      "study with t_end = c/epsilon per run");
  compare->add_option("--horizon-c", horizon_c,
                      "horizon constant c for the study")
      ->capture_default_str();

  auto* funk_test = app.add_subcommand(
      "funk-test", "run the transform identity checks and print a table");
  funk_test->add_option("--nodes", nodes, "great-circle quadrature nodes")
      ->capture_default_str();
  funk_test->add_option("--seed", seed, "random seed for the check ensembles")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed())
      return cmd_simulate(config, out_path, t_end, dt, x0, v0);
    if (average->parsed())
      return cmd_average(config, out_path, t_end, dt_avg, nodes, l0);
    if (portrait->parsed())
      return cmd_portrait(config, out_path, format, resolution, nodes, levels,
                          threads);
    if (compare->parsed())
      return cmd_compare(config, out_path, t_end, dt, dt_avg, sample_dt, nodes,
                         x0, v0, study_eps, horizon_c);
    if (funk_test->parsed()) return cmd_funk_test(nodes, seed);
  } catch (const geoflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const geoflow::UnsupportedFormat& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

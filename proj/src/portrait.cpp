#include "geoflow/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "geoflow/errors.hpp"
#include "geoflow/io_util.hpp"

namespace geoflow {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

Vec3 sph(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}
}  // namespace

double PortraitGrid::theta(int i) const { return i * kPi / (n_theta - 1); }
double PortraitGrid::phi(int j) const { return 2.0 * kPi * j / n_phi; }
Vec3 PortraitGrid::point(int i, int j) const { return sph(theta(i), phi(j)); }

PortraitGrid sample_grid(const Surface& s, int n_theta, int n_phi,
                         const CircleRule& rule, int threads) {
  if (n_theta < 16 || n_phi < 16)
    throw std::invalid_argument("portrait grid must be at least 16 x 16");
  PortraitGrid grid;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  grid.surface = s;
  grid.rule = rule;
  grid.values.assign(static_cast<std::size_t>(n_theta) * n_phi, 0.0);

  auto sample_rows = [&](int i_begin, int i_end) {
    for (int i = i_begin; i < i_end; ++i) {
      if (i == 0 || i == n_theta - 1) {
        const double pole = hamiltonian(grid.point(i, 0), s, rule);
        for (int j = 0; j < n_phi; ++j) grid.values[i * n_phi + j] = pole;
        continue;
      }
      for (int j = 0; j < n_phi; ++j)
        grid.values[i * n_phi + j] = hamiltonian(grid.point(i, j), s, rule);
    }
  };

  if (threads <= 1) {
    sample_rows(0, n_theta);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n_theta + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk, hi = std::min(n_theta, lo + chunk);
      if (lo < hi) pool.emplace_back(sample_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return grid;
}

namespace {

// Tangential gradient of H at a unit direction, exact up to quadrature
// roundoff: grad_tan H = p x (-p x grad H) = p x field.
Vec3 tangential_gradient(const PortraitGrid& g, const Vec3& p) {
  return cross(p, averaged_field_direct(p, g.surface, g.rule));
}

struct Refined {
  Vec3 p;
  double grad_norm;
};

Refined refine_critical(const PortraitGrid& g, Vec3 p) {
  const double fd = 1e-5;
  double gn = 0.0;
  for (int it = 0; it < 25; ++it) {
    const Vec3 G = tangential_gradient(g, p);
    gn = G.norm();
    if (gn < 1e-12) break;

    const Frame f = orthonormal_frame(p);
    const double b0 = -dot(f.e1, G), b1 = -dot(f.e2, G);

    double J[2][2];
    const Vec3 dirs[2] = {f.e1, f.e2};
    for (int c = 0; c < 2; ++c) {
      const Vec3 pp = (p + fd * dirs[c]).normalized();
      const Vec3 pm = (p - fd * dirs[c]).normalized();
      const Vec3 Gp = tangential_gradient(g, pp);
      const Vec3 Gm = tangential_gradient(g, pm);
      J[0][c] = dot(f.e1, Gp - Gm) / (2.0 * fd);
      J[1][c] = dot(f.e2, Gp - Gm) / (2.0 * fd);
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (std::abs(det) < 1e-18) break;
    double s0 = (b0 * J[1][1] - b1 * J[0][1]) / det;
    double s1 = (J[0][0] * b1 - J[1][0] * b0) / det;
    const double step = std::sqrt(s0 * s0 + s1 * s1);
    if (step > 0.1) {
      s0 *= 0.1 / step;
      s1 *= 0.1 / step;
    }
    p = (p + s0 * f.e1 + s1 * f.e2).normalized();
  }
  return {p, tangential_gradient(g, p).norm()};
}

struct Classified {
  bool degenerate;
  CriticalKind kind;
};

Classified classify_critical(const PortraitGrid& g, const Vec3& p) {
  const double d = 1e-4;
  const Frame f = orthonormal_frame(p);
  auto H = [&](const Vec3& q) { return hamiltonian(q, g.surface, g.rule); };
  const double h0 = H(p);
  const double huu = (H(p + d * f.e1) - 2.0 * h0 + H(p - d * f.e1)) / (d * d);
  const double hww = (H(p + d * f.e2) - 2.0 * h0 + H(p - d * f.e2)) / (d * d);
  const double huw = (H(p + d * (f.e1 + f.e2)) - H(p + d * (f.e1 - f.e2)) -
                      H(p - d * (f.e1 - f.e2)) + H(p - d * (f.e1 + f.e2))) /
                     (4.0 * d * d);
  const double det = huu * hww - huw * huw;
  if (std::abs(det) < 1e-10) return {true, CriticalKind::saddle};
  if (det < 0.0) return {false, CriticalKind::saddle};
  return {false, (huu + hww) < 0.0 ? CriticalKind::maximum
                                   : CriticalKind::minimum};
}

}  // namespace

CriticalPointSet find_critical_points(const PortraitGrid& grid) {
  CriticalPointSet out;
  const int nt = grid.n_theta, np = grid.n_phi;

  double vmin = grid.values[0], vmax = grid.values[0];
  for (double v : grid.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (vmax - vmin < 1e-13 * std::max(1.0, std::abs(vmax))) {
    out.flat = true;
    return out;
  }

  std::vector<Vec3> candidates;

  // Interior nodes: compare against the 8 neighbors.
  static constexpr int ring[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1},
                                     {1, 1},   {1, 0},  {1, -1}, {0, -1}};
  for (int i = 1; i < nt - 1; ++i) {
    for (int j = 0; j < np; ++j) {
      const double c = grid.value(i, j);
      double diffs[8];
      bool all_lower = true, all_higher = true;
      for (int q = 0; q < 8; ++q) {
        const int ii = i + ring[q][0];
        const int jj = (j + ring[q][1] + np) % np;
        diffs[q] = grid.value(ii, jj) - c;
        all_lower &= diffs[q] < 0.0;
        all_higher &= diffs[q] > 0.0;
      }
      bool candidate = all_lower || all_higher;
      if (!candidate) {
        int sign_changes = 0;
        for (int q = 0; q < 8; ++q) {
          const bool a = diffs[q] > 0.0, b = diffs[(q + 1) % 8] > 0.0;
          sign_changes += (a != b);
        }
        candidate = sign_changes >= 4;
      }
      if (candidate) candidates.push_back(grid.point(i, j));
    }
  }

  // Poles against their adjacent rows.
  for (int pole : {0, nt - 1}) {
    const int adj = (pole == 0) ? 1 : nt - 2;
    const double c = grid.value(pole, 0);
    bool all_lower = true, all_higher = true;
    for (int j = 0; j < np; ++j) {
      const double d = grid.value(adj, j) - c;
      all_lower &= d < 0.0;
      all_higher &= d > 0.0;
    }
    if (all_lower || all_higher) candidates.push_back(grid.point(pole, 0));
  }

  // Refine, keep genuine stationary points, merge duplicates.
  std::vector<Vec3> refined;
  for (const Vec3& cand : candidates) {
    const Refined r = refine_critical(grid, cand);
    if (r.grad_norm > 1e-10) continue;
    bool duplicate = false;
    for (const Vec3& q : refined)
      if (angle_between(q, r.p) < 1e-6) {
        duplicate = true;
        break;
      }
    if (!duplicate) refined.push_back(r.p);
  }

  // H is even, so critical points come in antipodal pairs; complete any
  // partner the grid pass missed.
  const std::size_t found = refined.size();
  for (std::size_t k = 0; k < found; ++k) {
    bool has_partner = false;
    for (const Vec3& q : refined)
      if (angle_between(q, -1.0 * refined[k]) < 1e-6) {
        has_partner = true;
        break;
      }
    if (!has_partner) refined.push_back(-1.0 * refined[k]);
  }

  for (const Vec3& p : refined) {
    const Classified c = classify_critical(grid, p);
    if (c.degenerate) {
      out.degenerate.push_back(p);
      continue;
    }
    out.points.push_back(
        {p, hamiltonian(p, grid.surface, grid.rule), c.kind});
  }

  std::sort(out.points.begin(), out.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.location.x != b.location.x)
                return a.location.x < b.location.x;
              if (a.location.y != b.location.y)
                return a.location.y < b.location.y;
              return a.location.z < b.location.z;
            });
  return out;
}

namespace {

// Edge keys for canonical, cell-independent contour vertices.
std::int64_t vertical_edge_key(int i, int j, int np) {
  return (static_cast<std::int64_t>(i) * np + j) * 2;
}
std::int64_t horizontal_edge_key(int i, int j, int np) {
  return (static_cast<std::int64_t>(i) * np + j) * 2 + 1;
}

struct LevelTracer {
  const PortraitGrid& g;
  double level;
  std::vector<Vec3> vertices;
  std::map<std::int64_t, int> vertex_of_edge;
  std::vector<std::pair<int, int>> segments;

  int vertex_on_vertical(int i, int j) {
    const std::int64_t key = vertical_edge_key(i, j, g.n_phi);
    auto it = vertex_of_edge.find(key);
    if (it != vertex_of_edge.end()) return it->second;
    const double v0 = g.value(i, j), v1 = g.value(i + 1, j);
    const double t = (level - v0) / (v1 - v0);
    const double dth = kPi / (g.n_theta - 1);
    vertices.push_back(sph(g.theta(i) + t * dth, g.phi(j)));
    vertex_of_edge.emplace(key, static_cast<int>(vertices.size()) - 1);
    return static_cast<int>(vertices.size()) - 1;
  }

  int vertex_on_horizontal(int i, int j) {
    const std::int64_t key = horizontal_edge_key(i, j, g.n_phi);
    auto it = vertex_of_edge.find(key);
    if (it != vertex_of_edge.end()) return it->second;
    const double v0 = g.value(i, j), v1 = g.value(i, (j + 1) % g.n_phi);
    const double t = (level - v0) / (v1 - v0);
    const double dph = 2.0 * kPi / g.n_phi;
    vertices.push_back(sph(g.theta(i), g.phi(j) + t * dph));
    vertex_of_edge.emplace(key, static_cast<int>(vertices.size()) - 1);
    return static_cast<int>(vertices.size()) - 1;
  }
};

}  // namespace

ContourSet extract_contours(const PortraitGrid& grid,
                            const std::vector<double>& levels) {
  ContourSet out;
  const int nt = grid.n_theta, np = grid.n_phi;

  for (double level : levels) {
    LevelTracer tracer{grid, level, {}, {}, {}};

    for (int i = 0; i < nt - 1; ++i) {
      for (int j = 0; j < np; ++j) {
        const int jn = (j + 1) % np;
        const double va = grid.value(i, j), vb = grid.value(i + 1, j),
                     vc = grid.value(i + 1, jn), vd = grid.value(i, jn);
        const bool aa = va > level, ab = vb > level, ac = vc > level,
                   ad = vd > level;

        // Cyclic edge order around the cell: AB, BC, CD, DA.
        const bool crossed[4] = {aa != ab, ab != ac, ac != ad, ad != aa};
        int n_crossed = crossed[0] + crossed[1] + crossed[2] + crossed[3];
        if (n_crossed == 0) continue;

        auto edge_vertex = [&](int e) -> int {
          switch (e) {
            case 0:
              return tracer.vertex_on_vertical(i, j);
            case 1:
              return tracer.vertex_on_horizontal(i + 1, j);
            case 2:
              return tracer.vertex_on_vertical(i, jn);
            default:
              return tracer.vertex_on_horizontal(i, j);
          }
        };

        if (n_crossed == 2) {
          int e0 = -1, e1 = -1;
          for (int e = 0; e < 4; ++e)
            if (crossed[e]) (e0 < 0 ? e0 : e1) = e;
          tracer.segments.emplace_back(edge_vertex(e0), edge_vertex(e1));
        } else {
          // Saddle cell; pair the crossings by the center value.
          const double center = 0.25 * (va + vb + vc + vd);
          const bool isolate_bd = (center > level) == aa;
          if (isolate_bd) {
            tracer.segments.emplace_back(edge_vertex(0), edge_vertex(1));
            tracer.segments.emplace_back(edge_vertex(2), edge_vertex(3));
          } else {
            tracer.segments.emplace_back(edge_vertex(3), edge_vertex(0));
            tracer.segments.emplace_back(edge_vertex(1), edge_vertex(2));
          }
        }
      }
    }

    // Stitch segments into chains and loops.
    const int nv = static_cast<int>(tracer.vertices.size());
    std::vector<std::vector<int>> incident(nv);
    for (int sidx = 0; sidx < static_cast<int>(tracer.segments.size()); ++sidx) {
      incident[tracer.segments[sidx].first].push_back(sidx);
      incident[tracer.segments[sidx].second].push_back(sidx);
    }
    std::vector<bool> used(tracer.segments.size(), false);

    auto walk = [&](int start_vertex) {
      std::vector<int> chain{start_vertex};
      int current = start_vertex;
      while (true) {
        int next_seg = -1;
        for (int sidx : incident[current])
          if (!used[sidx]) {
            next_seg = sidx;
            break;
          }
        if (next_seg < 0) break;
        used[next_seg] = true;
        const auto& seg = tracer.segments[next_seg];
        current = (seg.first == current) ? seg.second : seg.first;
        chain.push_back(current);
      }
      return chain;
    };

    ContourLevel cl{level, {}};
    auto emit_chain = [&](const std::vector<int>& chain) {
      if (chain.size() < 2) return;
      std::vector<Vec3> line;
      line.reserve(chain.size());
      for (int v : chain) line.push_back(tracer.vertices[v]);
      cl.polylines.push_back(std::move(line));
    };

    for (int v = 0; v < nv; ++v)
      if (incident[v].size() == 1) {
        bool pending = false;
        for (int sidx : incident[v]) pending |= !used[sidx];
        if (pending) emit_chain(walk(v));
      }
    for (int sidx = 0; sidx < static_cast<int>(tracer.segments.size()); ++sidx)
      if (!used[sidx]) emit_chain(walk(tracer.segments[sidx].first));

    // One Newton step per vertex toward the exact level set of H.
    for (auto& line : cl.polylines)
      for (Vec3& p : line) {
        const Vec3 G = tangential_gradient(grid, p);
        const double g2 = G.norm2();
        if (g2 < 1e-30) continue;
        const double residual =
            hamiltonian(p, grid.surface, grid.rule) - level;
        p = (p - (residual / g2) * G).normalized();
      }

    out.push_back(std::move(cl));
  }
  return out;
}

PortraitFormat parse_portrait_format(const std::string& name) {
  if (name == "json") return PortraitFormat::json;
  if (name == "csv") return PortraitFormat::csv;
  if (name == "svg") return PortraitFormat::svg;
  throw UnsupportedFormat("unsupported portrait format: " + name);
}

namespace {

const char* kind_name(CriticalKind k) {
  switch (k) {
    case CriticalKind::minimum:
      return "minimum";
    case CriticalKind::maximum:
      return "maximum";
    default:
      return "saddle";
  }
}

void emit_json(const PortraitGrid& grid, const ContourSet& contours,
               const CriticalPointSet& critical, std::ostream& os) {
  nlohmann::json j;
  j["epsilon"] = grid.surface.epsilon();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : grid.surface.psi().terms())
    terms.push_back({t.e[0], t.e[1], t.e[2], t.c});
  j["psi"] = {{"terms", terms}};
  j["n_theta"] = grid.n_theta;
  j["n_phi"] = grid.n_phi;
  j["values"] = grid.values;

  nlohmann::json cps = nlohmann::json::array();
  for (const auto& cp : critical.points)
    cps.push_back({{"xyz", {cp.location.x, cp.location.y, cp.location.z}},
                   {"value", cp.value},
                   {"kind", kind_name(cp.kind)}});
  j["critical_points"] = cps;

  nlohmann::json cs = nlohmann::json::array();
  for (const auto& cl : contours) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& line : cl.polylines) {
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& p : line) pts.push_back({p.x, p.y, p.z});
      lines.push_back(pts);
    }
    cs.push_back({{"level", cl.level}, {"polylines", lines}});
  }
  j["contours"] = cs;
  os << j.dump();
}

void emit_csv(const PortraitGrid& grid, std::ostream& os) {
  os << "theta,phi,L1,L2,L3,H\n";
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j) {
      const Vec3 p = grid.point(i, j);
      os << fmt17(grid.theta(i)) << ',' << fmt17(grid.phi(j)) << ','
         << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.z) << ','
         << fmt17(grid.value(i, j)) << '\n';
    }
}

void emit_svg(const ContourSet& contours,
              const CriticalPointSet& critical, std::ostream& os) {
  const double W = 800.0, Hh = 400.0;
  auto px = [&](const Vec3& p) {
    const double theta = std::acos(std::clamp(p.z, -1.0, 1.0));
    double phi = std::atan2(p.y, p.x);
    if (phi < 0.0) phi += 2.0 * kPi;
    return std::pair<double, double>{phi / (2.0 * kPi) * W, theta / kPi * Hh};
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
        "height=\"400\" viewBox=\"0 0 800 400\">\n"
     << "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";

  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int k = 1; k < 12; ++k) {
    const double x = W * k / 12.0;
    os << "<line x1=\"" << x << "\" y1=\"0\" x2=\"" << x
       << "\" y2=\"400\"/>\n";
  }
  for (int k = 1; k < 6; ++k) {
    const double y = Hh * k / 6.0;
    os << "<line x1=\"0\" y1=\"" << y << "\" x2=\"800\" y2=\"" << y
       << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g fill=\"none\" stroke=\"#333333\" stroke-width=\"1\">\n";
  for (const auto& cl : contours) {
    for (const auto& line : cl.polylines) {
      // Split at the longitude seam so no segment spans the full map.
      std::vector<std::pair<double, double>> run;
      auto flush = [&]() {
        if (run.size() < 2) {
          run.clear();
          return;
        }
        os << "<polyline points=\"";
        for (const auto& [x, y] : run) os << x << ',' << y << ' ';
        os << "\"/>\n";
        run.clear();
      };
      for (const auto& p : line) {
        const auto [x, y] = px(p);
        if (!run.empty() && std::abs(x - run.back().first) > W / 2.0) flush();
        run.emplace_back(x, y);
      }
      flush();
    }
  }
  os << "</g>\n";

  for (const auto& cp : critical.points) {
    const auto [x, y] = px(cp.location);
    const char* fill = cp.kind == CriticalKind::maximum ? "#d62728"
                       : cp.kind == CriticalKind::minimum ? "#1f77b4"
                                                          : "#2ca02c";
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\""
       << fill << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace

void emit_portrait(const PortraitGrid& grid, const ContourSet& contours,
                   const CriticalPointSet& critical, PortraitFormat format,
                   std::ostream& os) {
  switch (format) {
    case PortraitFormat::json:
      emit_json(grid, contours, critical, os);
      break;
    case PortraitFormat::csv:
      emit_csv(grid, os);
      break;
    case PortraitFormat::svg:
      emit_svg(contours, critical, os);
      break;
  }
}

}  // namespace geoflow

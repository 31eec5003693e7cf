#include "geoflow/surface.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "geoflow/errors.hpp"

namespace geoflow {

Surface::Surface(double epsilon, Polynomial3 psi, int max_degree)
    : epsilon_(epsilon), psi_(std::move(psi)) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("epsilon must be non-negative");
  if (psi_.total_degree() > max_degree)
    throw std::invalid_argument("deformation degree " +
                                std::to_string(psi_.total_degree()) +
                                " exceeds maximum " +
                                std::to_string(max_degree));
}

double Surface::phi(const Vec3& x) const {
  return x.norm2() - 1.0 + epsilon_ * psi_.eval(x);
}

Vec3 Surface::phi_grad(const Vec3& x) const {
  return 2.0 * x + epsilon_ * psi_.gradient(x);
}

Vec3 project_to_surface(const Surface& s, const Vec3& x0) {
  const double n0 = x0.norm();
  if (!(n0 > 0.0)) throw std::invalid_argument("cannot project zero vector");
  const Vec3 u = x0 / n0;

  double lo = 0.5, hi = 1.5;
  double flo = s.phi(lo * u), fhi = s.phi(hi * u);
  if (flo == 0.0) return lo * u;
  if (fhi == 0.0) return hi * u;
  if (flo * fhi > 0.0)
    throw NoRootInBracket(
        "phi has no sign change on the radial bracket [0.5, 1.5]; "
        "deformation too large for star-shaped projection");

  double r = 1.0;
  double f = s.phi(r * u);
  for (int it = 0; it < 100 && std::abs(f) > 1e-14; ++it) {
    if ((f > 0.0) == (flo > 0.0)) {
      lo = r;
      flo = f;
    } else {
      hi = r;
      fhi = f;
    }
    const double df = dot(s.phi_grad(r * u), u);
    double next = (df != 0.0) ? r - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
    f = s.phi(r * u);
  }
  if (std::abs(f) >= kProjectionTarget)
    throw ProjectionFailed("radial Newton did not reach |phi| < 1e-12");
  return r * u;
}

Polynomial3 ellipsoid_psi(double a1, double a2, double a3) {
  return Polynomial3::monomial(2, 0, 0, a1) + Polynomial3::monomial(0, 2, 0, a2) +
         Polynomial3::monomial(0, 0, 2, a3);
}

Polynomial3 solid_harmonic(int l, int m) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("solid_harmonic requires 0 <= |m| <= l");
  if (l > 32) throw std::invalid_argument("solid_harmonic degree too large");

  const Polynomial3 x = Polynomial3::variable(0);
  const Polynomial3 y = Polynomial3::variable(1);
  const Polynomial3 z = Polynomial3::variable(2);
  const Polynomial3 r2 = x * x + y * y + z * z;

  // table[n][m+n]; built by the standard diagonal/vertical recurrences.
  std::vector<std::vector<Polynomial3>> table;
  table.push_back({Polynomial3::constant(1.0)});
  for (int n = 0; n < l; ++n) {
    const auto& prev = table[n];
    std::vector<Polynomial3> next(2 * (n + 1) + 1);

    const double diag = std::sqrt((n == 0 ? 2.0 : 1.0) * (2.0 * n + 1.0) /
                                  (2.0 * n + 2.0));
    const Polynomial3& top = prev[2 * n];  // m = +n
    const Polynomial3 bot = (n == 0) ? Polynomial3() : prev[0];  // m = -n
    next[2 * (n + 1)] = (x * top - y * bot) * diag;
    next[0] = (y * top + x * bot) * diag;

    for (int mm = -n; mm <= n; ++mm) {
      const double denom = std::sqrt((n + mm + 1.0) * (n - mm + 1.0));
      Polynomial3 num = z * prev[mm + n] * (2.0 * n + 1.0);
      if (std::abs(mm) <= n - 1)
        num = num - r2 * table[n - 1][mm + n - 1] *
                        std::sqrt(double(n + mm) * double(n - mm));
      next[mm + n + 1] = num * (1.0 / denom);
    }
    table.push_back(std::move(next));
  }
  return table[l][m + l];
}

namespace {

Polynomial3 psi_from_terms(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ConfigError("psi must be an object with a \"terms\" array");
  std::vector<Polynomial3::Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 4)
      throw ConfigError("each psi term must be [i, j, k, c]");
    for (int q = 0; q < 3; ++q) {
      if (!t[q].is_number_integer() || t[q].get<long long>() < 0)
        throw ConfigError("psi exponents must be non-negative integers");
    }
    if (!t[3].is_number()) throw ConfigError("psi coefficient must be a number");
    terms.push_back({{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()},
                     t[3].get<double>()});
  }
  return Polynomial3(terms);
}

Polynomial3 psi_from_preset(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("params"))
    throw ConfigError("psi_preset needs \"name\" and \"params\"");
  const std::string name = j["name"].get<std::string>();
  const auto& p = j["params"];
  if (name == "ellipsoid") {
    if (!p.is_array() || p.size() != 3)
      throw ConfigError("ellipsoid preset takes params [a1, a2, a3]");
    return ellipsoid_psi(p[0].get<double>(), p[1].get<double>(),
                         p[2].get<double>());
  }
  if (name == "harmonic") {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
        !p[1].is_number_integer())
      throw ConfigError("harmonic preset takes integer params [l, m]");
    return solid_harmonic(p[0].get<int>(), p[1].get<int>());
  }
  throw ConfigError("unknown psi_preset \"" + name + "\"");
}

}  // namespace

Surface parse_surface_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("epsilon") || !j["epsilon"].is_number())
    throw ConfigError("config must contain a numeric \"epsilon\"");
  const double eps = j["epsilon"].get<double>();

  Polynomial3 psi;
  if (j.contains("psi") && j.contains("psi_preset"))
    throw ConfigError("give either \"psi\" or \"psi_preset\", not both");
  if (j.contains("psi"))
    psi = psi_from_terms(j["psi"]);
  else if (j.contains("psi_preset"))
    psi = psi_from_preset(j["psi_preset"]);
  else
    throw ConfigError("config must contain \"psi\" or \"psi_preset\"");

  try {
    return Surface(eps, std::move(psi));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Surface load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_surface_json(ss.str());
}

std::string surface_to_json(const Surface& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.psi().terms())
    terms.push_back({t.e[0], t.e[1], t.e[2], t.c});
  nlohmann::json j{{"epsilon", s.epsilon()}, {"psi", {{"terms", terms}}}};
  return j.dump();
}

}  // namespace geoflow

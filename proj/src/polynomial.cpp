#include "geoflow/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace geoflow {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::vector<Polynomial3::Term> canonicalize(
    const std::vector<Polynomial3::Term>& raw) {
  std::map<std::array<int, 3>, double> acc;
  for (const auto& t : raw) {
    if (t.e[0] < 0 || t.e[1] < 0 || t.e[2] < 0)
      throw std::invalid_argument("polynomial exponents must be non-negative");
    acc[t.e] += t.c;
  }
  std::vector<Polynomial3::Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc)
    if (c != 0.0) out.push_back({e, c});
  return out;
}

}  // namespace

Polynomial3::Polynomial3(std::vector<Term> terms)
    : terms_(canonicalize(terms)) {}

Polynomial3 Polynomial3::constant(double c) {
  return Polynomial3({{std::array<int, 3>{0, 0, 0}, c}});
}

Polynomial3 Polynomial3::monomial(int i, int j, int k, double c) {
  return Polynomial3({{std::array<int, 3>{i, j, k}, c}});
}

Polynomial3 Polynomial3::variable(int axis) {
  std::array<int, 3> e{0, 0, 0};
  e[axis] = 1;
  return Polynomial3({{e, 1.0}});
}

double Polynomial3::eval(const Vec3& p) const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.c * ipow(p.x, t.e[0]) * ipow(p.y, t.e[1]) * ipow(p.z, t.e[2]);
  return s;
}

Vec3 Polynomial3::gradient(const Vec3& p) const {
  Vec3 g;
  for (const auto& t : terms_) {
    const double px = ipow(p.x, t.e[0]), py = ipow(p.y, t.e[1]),
                 pz = ipow(p.z, t.e[2]);
    if (t.e[0] > 0) g.x += t.c * t.e[0] * ipow(p.x, t.e[0] - 1) * py * pz;
    if (t.e[1] > 0) g.y += t.c * t.e[1] * px * ipow(p.y, t.e[1] - 1) * pz;
    if (t.e[2] > 0) g.z += t.c * t.e[2] * px * py * ipow(p.z, t.e[2] - 1);
  }
  return g;
}

Mat3 Polynomial3::hessian(const Vec3& p) const {
  Mat3 h;
  for (const auto& t : terms_) {
    const int i = t.e[0], j = t.e[1], k = t.e[2];
    const double px = ipow(p.x, i), py = ipow(p.y, j), pz = ipow(p.z, k);
    if (i >= 2)
      h.a[0][0] += t.c * i * (i - 1) * ipow(p.x, i - 2) * py * pz;
    if (j >= 2)
      h.a[1][1] += t.c * j * (j - 1) * px * ipow(p.y, j - 2) * pz;
    if (k >= 2)
      h.a[2][2] += t.c * k * (k - 1) * px * py * ipow(p.z, k - 2);
    if (i >= 1 && j >= 1)
      h.a[0][1] += t.c * i * j * ipow(p.x, i - 1) * ipow(p.y, j - 1) * pz;
    if (i >= 1 && k >= 1)
      h.a[0][2] += t.c * i * k * ipow(p.x, i - 1) * py * ipow(p.z, k - 1);
    if (j >= 1 && k >= 1)
      h.a[1][2] += t.c * j * k * px * ipow(p.y, j - 1) * ipow(p.z, k - 1);
  }
  h.a[1][0] = h.a[0][1];
  h.a[2][0] = h.a[0][2];
  h.a[2][1] = h.a[1][2];
  return h;
}

Polynomial3 Polynomial3::derivative(int axis) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.e[axis] == 0) continue;
    Term d = t;
    d.c = t.c * t.e[axis];
    d.e[axis] -= 1;
    out.push_back(d);
  }
  return Polynomial3(out);
}

Polynomial3 Polynomial3::substitute_linear(const Mat3& A) const {
  // Each variable m becomes the linear form (row m of A) . p. Powers of the
  // three forms are built once up to the maximum exponent that occurs.
  std::array<int, 3> max_e{0, 0, 0};
  for (const auto& t : terms_)
    for (int m = 0; m < 3; ++m) max_e[m] = std::max(max_e[m], t.e[m]);

  std::array<std::vector<Polynomial3>, 3> powers;
  for (int m = 0; m < 3; ++m) {
    Polynomial3 form({{std::array<int, 3>{1, 0, 0}, A.a[m][0]},
                      {std::array<int, 3>{0, 1, 0}, A.a[m][1]},
                      {std::array<int, 3>{0, 0, 1}, A.a[m][2]}});
    powers[m].push_back(Polynomial3::constant(1.0));
    for (int p = 1; p <= max_e[m]; ++p)
      powers[m].push_back(powers[m].back() * form);
  }

  Polynomial3 result;
  for (const auto& t : terms_)
    result = result + powers[0][t.e[0]] * powers[1][t.e[1]] *
                          powers[2][t.e[2]] * t.c;
  return result;
}

int Polynomial3::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.e[0] + t.e[1] + t.e[2]);
  return d;
}

Polynomial3 Polynomial3::operator+(const Polynomial3& o) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return Polynomial3(all);
}

Polynomial3 Polynomial3::operator-(const Polynomial3& o) const {
  std::vector<Term> all = terms_;
  for (auto t : o.terms_) {
    t.c = -t.c;
    all.push_back(t);
  }
  return Polynomial3(all);
}

Polynomial3 Polynomial3::operator*(const Polynomial3& o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      out.push_back({{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]},
                     a.c * b.c});
  return Polynomial3(out);
}

Polynomial3 Polynomial3::operator*(double s) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.c *= s;
  return Polynomial3(out);
}

Polynomial3 angular_component(const Polynomial3& g, int axis) {
  const int j = (axis + 1) % 3, k = (axis + 2) % 3;
  return Polynomial3::variable(j) * g.derivative(k) -
         Polynomial3::variable(k) * g.derivative(j);
}

Polynomial3 laplacian(const Polynomial3& g) {
  return g.derivative(0).derivative(0) + g.derivative(1).derivative(1) +
         g.derivative(2).derivative(2);
}

double coefficient_distance(const Polynomial3& a, const Polynomial3& b) {
  std::map<std::array<int, 3>, double> diff;
  for (const auto& t : a.terms()) diff[t.e] += t.c;
  for (const auto& t : b.terms()) diff[t.e] -= t.c;
  double m = 0.0;
  for (const auto& [e, c] : diff) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace geoflow

#pragma once

#include <random>
#include <vector>

#include "geoflow/polynomial.hpp"
#include "geoflow/vec3.hpp"

namespace testutil {

inline std::mt19937_64 make_rng(std::uint64_t seed = 20240601) {
  return std::mt19937_64(seed);
}

inline geoflow::Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  geoflow::Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  while (v.norm() < 1e-3) v = {gauss(rng), gauss(rng), gauss(rng)};
  return v.normalized();
}

inline geoflow::Mat3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-3.141592653589793, 3.141592653589793);
  return geoflow::rotation_axis_angle(random_unit(rng), angle(rng));
}

// Sparse random polynomial: up to n_terms monomials of total degree <= d,
// coefficients uniform in [-scale, scale].
inline geoflow::Polynomial3 random_polynomial(std::mt19937_64& rng,
                                              int max_degree,
                                              int n_terms = 6,
                                              double scale = 1.0) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coeff(-scale, scale);
  std::vector<geoflow::Polynomial3::Term> terms;
  for (int t = 0; t < n_terms; ++t) {
    const int i = deg(rng), j = deg(rng), k = deg(rng);
    if (i + j + k > max_degree) continue;
    terms.push_back({{i, j, k}, coeff(rng)});
  }
  return geoflow::Polynomial3(terms);
}

}  // namespace testutil

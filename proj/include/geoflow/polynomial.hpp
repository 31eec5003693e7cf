#pragma once

#include <array>
#include <vector>

#include "geoflow/vec3.hpp"

namespace geoflow {

/// Sparse polynomial in three variables with exact term-by-term calculus.
///
/// Terms are kept canonical: sorted by exponent triple, duplicates merged,
/// exact zeros dropped. Evaluation, gradient and Hessian are consistent by
/// construction, which is what the constrained dynamics needs (the
/// multiplier formula uses second derivatives of the same field whose zero
/// set defines the surface).
class Polynomial3 {
 public:
  struct Term {
    std::array<int, 3> e{0, 0, 0};
    double c{0.0};
  };

  Polynomial3() = default;
  explicit Polynomial3(std::vector<Term> terms);

  static Polynomial3 constant(double c);
  static Polynomial3 monomial(int i, int j, int k, double c);
  static Polynomial3 variable(int axis);  // x, y or z

  double eval(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
  Mat3 hessian(const Vec3& p) const;  // symmetric by construction

  Polynomial3 derivative(int axis) const;

  /// Composition with a linear map: returns q with q(p) = this(A p).
  Polynomial3 substitute_linear(const Mat3& A) const;

  int total_degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Polynomial3 operator+(const Polynomial3& o) const;
  Polynomial3 operator-(const Polynomial3& o) const;
  Polynomial3 operator*(const Polynomial3& o) const;
  Polynomial3 operator*(double s) const;

 private:
  std::vector<Term> terms_;
};

inline Polynomial3 operator*(double s, const Polynomial3& p) { return p * s; }

/// Component `axis` of x x grad g as a polynomial (exact).
Polynomial3 angular_component(const Polynomial3& g, int axis);

/// Laplacian of g as a polynomial (exact).
Polynomial3 laplacian(const Polynomial3& g);

/// Max absolute coefficient difference over the union of monomials.
double coefficient_distance(const Polynomial3& a, const Polynomial3& b);

}  // namespace geoflow

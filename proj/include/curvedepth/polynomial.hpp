#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

/// One monomial term c * x^j1 * y^j2 of an affine bivariate polynomial.
struct Term {
  int j1 = 0;
  int j2 = 0;
  double coeff = 0.0;
};

/// Value, gradient and radial derivative x*f_x + y*f_y at an affine point.
struct RadialEval {
  double f = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double t = 0.0;
};

/// F and its gradient at a point of R^3, for the homogenization F.
struct HomogeneousEval {
  double value = 0.0;
  Vec3 gradient{};
};

/// A dense bivariate polynomial f(x, y) together with its homogenization
/// F(X, Y, Z) = Z^d f(X/Z, Y/Z) of degree d.
///
/// Coefficients live on a square grid indexed by (j1, j2); the degree is the
/// homogenization degree and must equal the largest total degree j1 + j2 of
/// any nonzero coefficient. Immutable after construction.
class PolySample {
 public:
  /// Builds from a list of terms. Repeated (j1, j2) pairs are summed.
  /// Throws std::invalid_argument if the degree does not match the support or
  /// a coefficient is not finite.
  PolySample(int degree, std::span<const Term> terms, std::uint64_t seed_id = 0);

  /// Builds from a dense (span x span) row-major grid, entry [j1 * span + j2].
  PolySample(int degree, int span, std::vector<double> grid, std::uint64_t seed_id = 0);

  int degree() const noexcept { return degree_; }
  int span() const noexcept { return span_; }
  std::uint64_t seed_id() const noexcept { return seed_id_; }

  /// Coefficient of x^j1 y^j2; zero outside the stored grid.
  double coeff(int j1, int j2) const noexcept;

  const std::vector<double>& grid() const noexcept { return grid_; }

  /// f, f_x, f_y and t = x f_x + y f_y by nested Horner evaluation.
  RadialEval eval_with_radial(double x, double y) const noexcept;

  /// F(X, Y, Z) at an arbitrary point of R^3.
  double eval_homogeneous(const Vec3& p) const noexcept;

  /// F and grad F at an arbitrary point of R^3.
  HomogeneousEval eval_homogeneous_gradient(const Vec3& p) const noexcept;

  /// F at a unit vector. Throws std::invalid_argument if |p| differs from 1
  /// by more than 1e-12.
  double eval_sphere(const Vec3& p) const;

  /// F at many points; `out` must have the same size as `points`.
  void eval_homogeneous_batch(std::span<const Vec3> points, std::span<double> out) const;

 private:
  void validate();

  int degree_;
  int span_;
  std::vector<double> grid_;
  std::uint64_t seed_id_;
};

/// Free-function forms of the two evaluation entry points.
inline RadialEval eval_with_radial(const PolySample& poly, double x, double y) {
  return poly.eval_with_radial(x, y);
}

inline double homogenize_and_eval_sphere(const PolySample& poly, const Vec3& point) {
  return poly.eval_sphere(point);
}

/// The polynomial G with G(P) = F(R^T P), so that the zero set of G on the
/// sphere is the rotation R of the zero set of F. Expands the composition
/// exactly in the monomial basis; the result has full support j1 + j2 <= d.
PolySample rotated(const PolySample& poly, const Mat3& rotation);

}  // namespace curvedepth

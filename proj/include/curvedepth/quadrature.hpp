#pragma once

#include <cstddef>
#include <limits>

#include "curvedepth/ensembles.hpp"
#include "curvedepth/gauss_kronrod.hpp"
#include "curvedepth/kernel.hpp"

namespace curvedepth {

struct QuadConfig {
  /// Absolute tolerance on the reported value.
  double tol = 1e-8;
  /// Panel budget for each adaptive one-dimensional integration.
  std::size_t max_panels = 1'000'000;
  /// Integrate only r < radial_cutoff; infinity covers the whole plane.
  double radial_cutoff = std::numeric_limits<double>::infinity();
};

/// The integral term of the expected depth and its uncertainty. For odd curve
/// degree the expected depth itself is only known to lie within
/// value +/- a_d_band.
struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;
  double a_d_band = 0.0;
  int degree = 0;
  SchemeKind kind = SchemeKind::Kostlan;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

/// Half-width of the additive band: 0 for even curve degree, 1/2 for odd.
double odd_degree_band(int curve_degree);

/// (1 / 2 pi^2) times the plane integral of integrand / (x^2 + y^2), in polar
/// coordinates with r = tan(u). Throws NonConvergence or SingularEvaluation.
IntegralResult expected_depth(const CovKernel& kernel, const QuadConfig& cfg = {});

/// The Kac ensemble in its 8-fold symmetric polar form,
/// (4 / pi^2) int_0^inf int_0^(pi/4) sqrt(cos^2 phi_d(r cos) + sin^2 phi_d(r sin)).
IntegralResult expected_depth_kac_polar(int d, const QuadConfig& cfg = {});

/// (1 / pi) int_0^inf sqrt(phi_d(s)) ds, the expected number of positive real
/// roots of a univariate Kac polynomial of degree d.
double kac_1d_root_density_integral(int d, const QuadConfig& cfg = {});

}  // namespace curvedepth

#pragma once

#include "curvedepth/polynomial.hpp"

namespace curvedepth {

struct MollifierGrid {
  double r_cut = 50.0;
  int n_r = 5000;
  int n_theta = 720;
  /// Deepest bisection of a radial cell near the band |f| <= epsilon.
  int max_refine = 24;
};

/// Box mollifier of width 2 epsilon: 1 / (2 epsilon) on [-epsilon, epsilon].
double box_mollifier(double value, double epsilon);

/// (1 / 2 pi) times the integral over the disc r < r_cut of
/// eta_eps(f) |x f_x + y f_y| / (x^2 + y^2), by the midpoint rule on a polar
/// grid whose radial cells are bisected where they meet the band.
/// Throws std::invalid_argument for odd degree, f(0, 0) = 0 or epsilon <= 0.
double mollified_count(const PolySample& poly, double epsilon, const MollifierGrid& grid = {});

}  // namespace curvedepth

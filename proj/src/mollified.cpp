#include "curvedepth/mollified.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvedepth {

namespace {

// -1 below the band, 0 inside, +1 above.
int band_side(double f, double epsilon) {
  if (f < -epsilon) return -1;
  if (f > epsilon) return 1;
  return 0;
}

struct Ray {
  const PolySample& poly;
  double c;
  double s;
  double epsilon;
  int max_refine;

  double f(double r) const { return poly.eval_with_radial(r * c, r * s).f; }

  // Midpoint value of eta(f) |f_r| over [a, b], bisecting while the cell
  // straddles a band edge and is not yet thin relative to the band.
  double cell(double a, double b, double fa, double fb, int depth) const {
    const double m = 0.5 * (a + b);
    const RadialEval e = poly.eval_with_radial(m * c, m * s);
    const double fr = std::abs(e.t) / m;
    const int sa = band_side(fa, epsilon);
    const int sb = band_side(fb, epsilon);
    const int sm = band_side(e.f, epsilon);
    const bool uniform = sa == sb && sb == sm;
    const bool resolved = (b - a) * fr <= epsilon / 512.0;
    if (uniform || resolved || depth >= max_refine) return (b - a) * box_mollifier(e.f, epsilon) * fr;
    return cell(a, m, fa, e.f, depth + 1) + cell(m, b, e.f, fb, depth + 1);
  }
};

}  // namespace

double box_mollifier(double value, double epsilon) { return std::abs(value) <= epsilon ? 0.5 / epsilon : 0.0; }

double mollified_count(const PolySample& poly, double epsilon, const MollifierGrid& grid) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (poly.degree() % 2 != 0) throw std::invalid_argument("mollified count needs an even degree");
  if (poly.coeff(0, 0) == 0.0) throw std::invalid_argument("mollified count needs f(0, 0) != 0");
  if (grid.n_r < 1 || grid.n_theta < 1 || !(grid.r_cut > 0.0)) throw std::invalid_argument("bad mollifier grid");

  const double dr = grid.r_cut / grid.n_r;
  const double dtheta = 2.0 * std::numbers::pi / grid.n_theta;
  double total = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double theta = (i + 0.5) * dtheta;
    const Ray ray{poly, std::cos(theta), std::sin(theta), epsilon, grid.max_refine};
    double line = 0.0;
    double fa = ray.f(0.0);
    for (int k = 0; k < grid.n_r; ++k) {
      const double a = k * dr;
      const double b = (k + 1) * dr;
      const double fb = ray.f(b);
      line += ray.cell(a, b, fa, fb, 0);
      fa = fb;
    }
    total += line * dtheta;
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace curvedepth

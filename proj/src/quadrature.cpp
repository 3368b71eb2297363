#include "curvedepth/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvedepth/errors.hpp"

namespace curvedepth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void check_config(const QuadConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (cfg.max_panels < 1) throw std::invalid_argument("max_panels must be positive");
  if (!(cfg.radial_cutoff > 0.0)) throw std::invalid_argument("radial cutoff must be positive");
}

double upper_u(const QuadConfig& cfg) {
  return std::isinf(cfg.radial_cutoff) ? kHalfPi : std::atan(cfg.radial_cutoff);
}

// Initial radial panels, log-uniform in r (three per octave from 1/16 to
// 2^24) and mapped through u = atan(r). Structure of width proportional to r
// at any scale sees several nodes of the first pass.
std::vector<double> log_radial_breakpoints(double u_max) {
  std::vector<double> u{0.0};
  for (int k = -12; k <= 72; ++k) {
    const double b = std::atan(std::exp2(k / 3.0));
    if (b < u_max) u.push_back(b);
  }
  u.push_back(u_max);
  return u;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Adds the points ridge * (1 +/- 2^k / (d+1)) around a Kac ridge at radius
// `ridge`, where sqrt(phi_d) has a peak of width ~1/d with 1/|s - 1| tails.
void add_ridge_breakpoints(std::vector<double>& u, double ridge, int d, double u_max) {
  if (!std::isfinite(ridge)) return;
  const double n = d + 1.0;
  auto push = [&](double r) {
    if (r > 0.0) {
      const double b = std::atan(r);
      if (b < u_max) u.push_back(b);
    }
  };
  push(ridge);
  for (double step = 1.0 / n; step < 0.5; step *= 2.0) {
    push(ridge * (1.0 - step));
    push(ridge * (1.0 + step));
  }
}

struct InnerTotals {
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

QuadratureEstimate require_converged(const QuadratureEstimate& est, double tol, double scale, const char* what) {
  if (!est.converged) {
    throw NonConvergence(std::string(what) + ": error estimate " + std::to_string(est.error * scale) +
                             " exceeds tolerance " + std::to_string(tol * scale),
                         est.value * scale, est.error * scale);
  }
  return est;
}

}  // namespace

double odd_degree_band(int curve_degree) { return curve_degree % 2 == 1 ? 0.5 : 0.0; }

IntegralResult expected_depth(const CovKernel& kernel, const QuadConfig& cfg) {
  check_config(cfg);
  const double prefactor = 1.0 / (2.0 * kPi * kPi);
  const double outer_tol = cfg.tol / prefactor;
  const double inner_tol = 0.25 * outer_tol / (2.0 * kPi);
  const double u_max = upper_u(cfg);
  const std::vector<double> radial = log_radial_breakpoints(u_max);
  InnerTotals totals;

  auto radial_integral = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    auto h = [&](double u) {
      const double r = std::tan(u);
      return kernel.integrand_over_radius(c, s, r) * (1.0 + r * r);
    };
    const QuadratureEstimate est = integrate_adaptive(h, radial, inner_tol, cfg.max_panels);
    totals.panels += est.panels;
    totals.evaluations += est.evaluations;
    require_converged(est, inner_tol, prefactor, "radial integral");
    return PanelEstimate{est.value, est.error};
  };

  QuadratureEstimate outer;
  if (kernel.mode() == KernelMode::ClosedFormKostlan) {
    // Rotation invariant integrand: a periodic trapezoid rule is exact, and
    // the 8- vs 16-node difference bounds its error.
    constexpr int kNodes = 16;
    double sum_all = 0.0;
    double sum_even = 0.0;
    double carried = 0.0;
    for (int k = 0; k < kNodes; ++k) {
      const PanelEstimate p = radial_integral(2.0 * kPi * k / kNodes);
      sum_all += p.value;
      carried += p.error;
      if (k % 2 == 0) sum_even += p.value;
    }
    const double t16 = 2.0 * kPi * sum_all / kNodes;
    const double t8 = 2.0 * kPi * sum_even / (kNodes / 2);
    outer.value = t16;
    outer.error = std::abs(t16 - t8) + 2.0 * kPi * carried / kNodes;
    outer.panels = kNodes;
    outer.evaluations = kNodes;
    outer.converged = outer.error <= outer_tol;
  } else {
    std::vector<double> angles;
    for (int k = 0; k <= 8; ++k) angles.push_back(k * kPi / 4.0);
    outer = integrate_adaptive(radial_integral, angles, outer_tol, cfg.max_panels);
  }
  require_converged(outer, outer_tol, prefactor, "expected_depth");

  IntegralResult result;
  result.value = outer.value * prefactor;
  result.err_est = outer.error * prefactor;
  result.degree = kernel.scheme().degree();
  result.kind = kernel.scheme().kind();
  result.a_d_band = odd_degree_band(kernel.scheme().homogeneous_degree());
  result.panels = outer.panels + totals.panels;
  result.evaluations = outer.evaluations + totals.evaluations;
  return result;
}

IntegralResult expected_depth_kac_polar(int d, const QuadConfig& cfg) {
  check_config(cfg);
  if (d < 1) throw std::invalid_argument("Kac degree must be >= 1");
  const double prefactor = 4.0 / (kPi * kPi);
  const double outer_tol = cfg.tol / prefactor;
  const double inner_tol = 0.25 * outer_tol / (kPi / 4.0);
  const double u_max = upper_u(cfg);
  const std::vector<double> base = log_radial_breakpoints(u_max);
  InnerTotals totals;

  auto radial_integral = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<double> u = base;
    add_ridge_breakpoints(u, 1.0 / c, d, u_max);
    add_ridge_breakpoints(u, s > 0.0 ? 1.0 / s : HUGE_VAL, d, u_max);
    sort_unique(u);
    auto h = [&](double uu) {
      const double r = std::tan(uu);
      const double v = c * c * kac_phi(d, r * c) + s * s * kac_phi(d, r * s);
      return std::sqrt(clamp_determinant(v, v)) * (1.0 + r * r);
    };
    const QuadratureEstimate est = integrate_adaptive(h, u, inner_tol, cfg.max_panels);
    totals.panels += est.panels;
    totals.evaluations += est.evaluations;
    require_converged(est, inner_tol, prefactor, "radial integral");
    return PanelEstimate{est.value, est.error};
  };

  const std::vector<double> angles{0.0, kPi / 16.0, kPi / 8.0, 3.0 * kPi / 16.0, kPi / 4.0};
  const QuadratureEstimate outer = integrate_adaptive(radial_integral, angles, outer_tol, cfg.max_panels);
  require_converged(outer, outer_tol, prefactor, "expected_depth_kac_polar");

  IntegralResult result;
  result.value = outer.value * prefactor;
  result.err_est = outer.error * prefactor;
  result.degree = d;
  result.kind = SchemeKind::KacSquare;
  result.a_d_band = odd_degree_band(2 * d);
  result.panels = outer.panels + totals.panels;
  result.evaluations = outer.evaluations + totals.evaluations;
  return result;
}

double kac_1d_root_density_integral(int d, const QuadConfig& cfg) {
  check_config(cfg);
  if (d < 1) throw std::invalid_argument("Kac degree must be >= 1");
  // phi_d(1/s) = s^4 phi_d(s) folds (1, inf) onto (0, 1).
  const double prefactor = 2.0 / kPi;
  const double tol = cfg.tol / prefactor;
  std::vector<double> s{0.0, 1.0};
  for (double step = 1.0 / (d + 1.0); step < 1.0; step *= 2.0) s.push_back(1.0 - step);
  sort_unique(s);
  auto f = [d](double x) { return std::sqrt(kac_phi(d, x)); };
  const QuadratureEstimate est = integrate_adaptive(f, s, tol, cfg.max_panels);
  require_converged(est, tol, prefactor, "kac_1d_root_density_integral");
  return est.value * prefactor;
}

}  // namespace curvedepth

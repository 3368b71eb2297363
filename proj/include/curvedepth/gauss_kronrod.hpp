#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace curvedepth {

/// A sampled value that carries its own error, e.g. an inner integral of a
/// nested quadrature. The outer rule integrates the error alongside.
struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

inline double as_value(double v) { return v; }
inline double as_value(const PanelEstimate& v) { return v.value; }
inline double as_error(double) { return 0.0; }
inline double as_error(const PanelEstimate& v) { return v.error; }

// One 21-point Kronrod panel with the embedded 10-point Gauss rule. The error
// estimate follows the QUADPACK qk21 heuristic, plus any error carried by the
// samples themselves.
template <class F>
Panel gk21_panel(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  double carried = 0.0;

  const auto fc = f(center);
  fv[0] = as_value(fc);
  carried += wk[0] * as_error(fc);
  double kronrod = wk[0] * fv[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double dx = half * x[i];
    const auto f1 = f(center - dx);
    const auto f2 = f(center + dx);
    fv[2 * i - 1] = as_value(f1);
    fv[2 * i] = as_value(f2);
    carried += wk[i] * (as_error(f1) + as_error(f2));
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kronrod += wk[i] * pair;
    if (i % 2 == 1) gauss += wg[(i - 1) / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double resabs = wk[0] * std::abs(fv[0]);
  double resasc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < x.size(); ++i) {
    resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  }
  const double scale = std::abs(half);
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

  return {a, b, kronrod * half, err + carried * scale};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G10/K21) quadrature with an absolute
/// tolerance. `breakpoints` (sorted, at least two) give the initial panels;
/// the panel with the largest error is bisected until the summed error is
/// below `abs_tol` or `max_panels` is reached. `f` returns double or
/// PanelEstimate. Never samples the breakpoints themselves.
template <class F>
QuadratureEstimate integrate_adaptive(F&& f, std::span<const double> breakpoints, double abs_tol,
                                      std::size_t max_panels) {
  using detail::Panel;
  auto by_error = [](const Panel& l, const Panel& r) { return l.error < r.error; };
  std::vector<Panel> open;  // max-heap on error
  std::vector<Panel> closed;
  QuadratureEstimate est;

  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    open.push_back(detail::gk21_panel(f, breakpoints[i], breakpoints[i + 1]));
    est.evaluations += 21;
    total_err += open.back().error;
  }
  std::make_heap(open.begin(), open.end(), by_error);
  std::size_t panels = open.size();

  while (!open.empty()) {
    if (total_err <= abs_tol) {
      // The running sum drifts; confirm before stopping.
      double exact = 0.0;
      for (const Panel& p : open) exact += p.error;
      for (const Panel& p : closed) exact += p.error;
      total_err = exact;
      if (total_err <= abs_tol) break;
    }
    if (panels >= max_panels) break;
    std::pop_heap(open.begin(), open.end(), by_error);
    const Panel worst = open.back();
    open.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
      closed.push_back(worst);
      continue;
    }
    for (const Panel& half : {detail::gk21_panel(f, worst.a, mid), detail::gk21_panel(f, mid, worst.b)}) {
      open.push_back(half);
      std::push_heap(open.begin(), open.end(), by_error);
      total_err += half.error;
    }
    total_err -= worst.error;
    est.evaluations += 42;
    ++panels;
  }

  closed.insert(closed.end(), open.begin(), open.end());
  std::sort(closed.begin(), closed.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : closed) {
    est.value += p.value;
    est.error += p.error;
  }
  est.panels = panels;
  est.converged = est.error <= abs_tol;
  return est;
}

}  // namespace curvedepth

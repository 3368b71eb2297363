#pragma once

#include "curvedepth/ensembles.hpp"

namespace curvedepth {

enum class KernelMode { ClosedFormKostlan, ClosedFormKac, Series };

/// Covariance data of the Gaussian pair (W, T) = (f, x f_x + y f_y) at a point.
/// The true values are alpha * e^log_scale, beta * e^log_scale and
/// gamma * e^log_scale; log_scale is nonzero only when alpha would overflow.
struct Moments {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double log_scale = 0.0;
};

/// Scale-free form of the same data: log alpha, beta/alpha and
/// det(Sigma)/alpha^2 = gamma/alpha - (beta/alpha)^2.
struct NormalizedMoments {
  double log_alpha = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

/// Evaluates the covariance kernel K_d = E[f^2] of an ensemble together with
/// its log-derivatives under D = (x/2) d/dx + (y/2) d/dy.
class CovKernel {
 public:
  /// Closed form where one exists (Kostlan, Kac), Series otherwise.
  static CovKernel closed_form(CoefficientScheme scheme);

  /// Always sums the finite series over the scheme's support.
  static CovKernel series(CoefficientScheme scheme);

  const CoefficientScheme& scheme() const noexcept { return scheme_; }
  KernelMode mode() const noexcept { return mode_; }

  NormalizedMoments normalized(double x, double y) const;

  Moments alpha_beta_gamma(double x, double y) const;

  /// sqrt(det Sigma) / alpha = sqrt((D1 + D2)^2 log K_d); always >= 0.
  double integrand(double x, double y) const;

  /// integrand(r cos t, r sin t) / r for the unit direction (c, s), with the
  /// finite limit at r = 0.
  double integrand_over_radius(double c, double s, double r) const;

 private:
  CovKernel(CoefficientScheme scheme, KernelMode mode) : scheme_(std::move(scheme)), mode_(mode) {}

  NormalizedMoments series_moments(double x, double y) const;

  CoefficientScheme scheme_;
  KernelMode mode_;
};

/// Free-function spellings of the kernel operations.
inline Moments alpha_beta_gamma(const CovKernel& k, double x, double y) { return k.alpha_beta_gamma(x, y); }
inline double integrand(const CovKernel& k, double x, double y) { return k.integrand(x, y); }

/// phi_d(s) = 1/(s^2-1)^2 - (d+1)^2 s^(2d) / (s^(2d+2)-1)^2, continued
/// through its removable singularity at s = 1 where it equals d(d+2)/12.
/// (1/pi) sqrt(phi_d) is the real-root density of the univariate Kac
/// polynomial. Requires s >= 0 and d >= 1.
double kac_phi(int d, double s);

/// D log A_d(s) for A_d(s) = sum_{i<=d} s^(2i), with D = (s/2) d/ds.
/// Equals d/2 at s = 1 and 0 at s = 0.
double kac_log_derivative(int d, double s);

/// log A_d(s) = log sum_{i<=d} s^(2i).
double kac_log_row_sum(int d, double s);

/// Applies the det(Sigma) >= 0 contract: values in (-1e-12 * scale, 0) become
/// 0, anything more negative throws SingularEvaluation.
double clamp_determinant(double det, double scale);

}  // namespace curvedepth

#include "curvedepth/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "curvedepth/errors.hpp"

namespace curvedepth {

namespace {

// csch^2(v) - 1/v^2 = sum_k kCsch[k] v^(2k), from the Bernoulli expansion
// -2^(2k) B_2k (2k-1) / (2k)!.
constexpr std::array<double, 18> kCsch = {
    -3.3333333333333333333e-01, 6.6666666666666666667e-02,  -1.0582010582010582011e-02,
    1.4814814814814814815e-03,  -1.9240019240019240019e-04, 2.3808447088870369294e-05,
    -2.8503732207435911140e-06, 3.3321913184969518614e-07,  -3.8263339078575287852e-08,
    4.3329787288725147445e-09,  -4.8523508457905510603e-10, 5.3846925685597233106e-11,
    -5.9302543500584135738e-12, 6.4892921399930806684e-13,  -7.0620666684631769320e-14,
    7.6488432940033431588e-15,  -8.2498920145028669634e-16, 8.8654875250922219103e-17};

// coth(v) - 1/v = sum_k kCoth[k] v^(2k+1), coefficients 2^(2k) B_2k / (2k)!.
constexpr std::array<double, 18> kCoth = {
    3.3333333333333333333e-01,  -2.2222222222222222222e-02, 2.1164021164021164021e-03,
    -2.1164021164021164021e-04, 2.1377799155576933355e-05,  -2.1644042808063972085e-06,
    2.1925947851873777800e-07,  -2.2214608789979679076e-08, 2.2507846516808992854e-09,
    -2.2805151204592182866e-10, 2.3106432599002624097e-11,  -2.3411706819824883959e-12,
    2.3721017400233654295e-13,  -2.4034415333307706179e-14, 2.4351954029183368731e-15,
    -2.4673688045172074706e-16, 2.4999672771220808980e-17,  -2.5329964357406348315e-18};

template <std::size_t N>
double even_series(const std::array<double, N>& c, double v2) {
  double acc = 0.0;
  for (std::size_t k = N; k-- > 0;) acc = acc * v2 + c[k];
  return acc;
}

// csch^2(v) - 1/v^2, smooth through v = 0.
double csch2_regular(double v) {
  if (std::abs(v) < 1.0) return even_series(kCsch, v * v);
  const double sh = std::sinh(v);
  return 1.0 / (sh * sh) - 1.0 / (v * v);
}

// coth(v) - 1/v, smooth through v = 0.
double coth_regular(double v) {
  if (std::abs(v) < 1.0) return v * even_series(kCoth, v * v);
  return 1.0 / std::tanh(v) - 1.0 / v;
}

// Below this value of (d + 1)|log s| the two poles of phi_d cancel badly and
// the csch^2 form with its 1/v^2 parts removed analytically takes over.
constexpr double kNearOneThreshold = 2.0;

void check_kac_args(int d, double s) {
  if (d < 1) throw std::invalid_argument("Kac degree must be >= 1");
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("Kac argument must be finite and >= 0");
}

}  // namespace

double kac_phi(int d, double s) {
  check_kac_args(d, s);
  if (s > 1.0) {
    const double inv = 1.0 / s;
    const double inv2 = inv * inv;
    return kac_phi(d, inv) * inv2 * inv2;
  }
  if (s == 0.0) return 1.0;
  const double n = d + 1.0;
  const double z = std::log(s);
  if (n * -z >= kNearOneThreshold) {
    const double one_minus_u = (1.0 - s) * (1.0 + s);
    const double den = -std::expm1(2.0 * n * z);
    return 1.0 / (one_minus_u * one_minus_u) - n * n * std::exp(2.0 * d * z) / (den * den);
  }
  // s^2 phi_d(s) = (csch^2(z) - n^2 csch^2(n z)) / 4 with z = log s.
  return (csch2_regular(z) - n * n * csch2_regular(n * z)) / (4.0 * s * s);
}

double kac_log_derivative(int d, double s) {
  s = std::abs(s);
  check_kac_args(d, s);
  if (s > 1.0) return d - kac_log_derivative(d, 1.0 / s);
  if (s == 0.0) return 0.0;
  const double n = d + 1.0;
  const double z = std::log(s);
  if (n * -z >= kNearOneThreshold) {
    const double u = s * s;
    return u / ((1.0 - s) * (1.0 + s)) - n * std::exp(2.0 * n * z) / -std::expm1(2.0 * n * z);
  }
  return 0.5 * d + 0.5 * n * coth_regular(n * z) - 0.5 * coth_regular(z);
}

double kac_log_row_sum(int d, double s) {
  s = std::abs(s);
  check_kac_args(d, s);
  if (s > 1.0) return 2.0 * d * std::log(s) + kac_log_row_sum(d, 1.0 / s);
  if (s == 0.0) return 0.0;
  if (s == 1.0) return std::log(d + 1.0);
  const double z = std::log(s);
  return std::log(-std::expm1(2.0 * (d + 1.0) * z)) - std::log(-std::expm1(2.0 * z));
}

double clamp_determinant(double det, double scale) {
  if (det >= 0.0) return det;
  if (det > -1e-12 * std::abs(scale)) return 0.0;
  throw SingularEvaluation("negative covariance determinant " + std::to_string(det) +
                           " (scale " + std::to_string(scale) + ")");
}

CovKernel CovKernel::closed_form(CoefficientScheme scheme) {
  switch (scheme.kind()) {
    case SchemeKind::Kostlan: return CovKernel(std::move(scheme), KernelMode::ClosedFormKostlan);
    case SchemeKind::KacSquare: return CovKernel(std::move(scheme), KernelMode::ClosedFormKac);
    case SchemeKind::Custom: break;
  }
  return CovKernel(std::move(scheme), KernelMode::Series);
}

CovKernel CovKernel::series(CoefficientScheme scheme) {
  return CovKernel(std::move(scheme), KernelMode::Series);
}

NormalizedMoments CovKernel::series_moments(double x, double y) const {
  const double lx = std::log(std::abs(x));
  const double ly = std::log(std::abs(y));
  const int span = scheme_.span();
  double top = -std::numeric_limits<double>::infinity();
  auto log_term = [&](int j1, int j2) {
    double lw = 2.0 * scheme_.log_weight(j1, j2);
    if (j1 > 0) lw += 2.0 * j1 * lx;
    if (j2 > 0) lw += 2.0 * j2 * ly;
    return lw;
  };
  for (int j1 = 0; j1 < span; ++j1) {
    for (int j2 = 0; j2 < span; ++j2) {
      if (scheme_.contains(j1, j2)) top = std::max(top, log_term(j1, j2));
    }
  }
  if (!std::isfinite(top)) {
    throw SingularEvaluation("kernel vanishes at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  double sum = 0.0;
  double first = 0.0;
  for (int j1 = 0; j1 < span; ++j1) {
    for (int j2 = 0; j2 < span; ++j2) {
      if (!scheme_.contains(j1, j2)) continue;
      const double w = std::exp(log_term(j1, j2) - top);
      sum += w;
      first += w * (j1 + j2);
    }
  }
  const double mean = first / sum;
  double second = 0.0;
  for (int j1 = 0; j1 < span; ++j1) {
    for (int j2 = 0; j2 < span; ++j2) {
      if (!scheme_.contains(j1, j2)) continue;
      const double w = std::exp(log_term(j1, j2) - top);
      const double dev = (j1 + j2) - mean;
      second += w * dev * dev;
    }
  }
  return {top + std::log(sum), mean, second / sum};
}

NormalizedMoments CovKernel::normalized(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("kernel point must be finite");
  const int d = scheme_.degree();
  switch (mode_) {
    case KernelMode::ClosedFormKostlan: {
      const double u = x * x + y * y;
      return {d * std::log1p(u), d * u / (1.0 + u), d * u / ((1.0 + u) * (1.0 + u))};
    }
    case KernelMode::ClosedFormKac: {
      const double ax = std::abs(x);
      const double ay = std::abs(y);
      return {kac_log_row_sum(d, ax) + kac_log_row_sum(d, ay),
              kac_log_derivative(d, ax) + kac_log_derivative(d, ay),
              x * x * kac_phi(d, ax) + y * y * kac_phi(d, ay)};
    }
    case KernelMode::Series: break;
  }
  return series_moments(x, y);
}

Moments CovKernel::alpha_beta_gamma(double x, double y) const {
  const NormalizedMoments nm = normalized(x, y);
  Moments m;
  if (nm.log_alpha < 700.0) {
    m.alpha = std::exp(nm.log_alpha);
  } else {
    m.alpha = 1.0;
    m.log_scale = nm.log_alpha;
  }
  m.beta = nm.mean * m.alpha;
  m.gamma = (nm.variance + nm.mean * nm.mean) * m.alpha;
  return m;
}

double CovKernel::integrand(double x, double y) const {
  const NormalizedMoments nm = normalized(x, y);
  return std::sqrt(clamp_determinant(nm.variance, nm.variance + nm.mean * nm.mean));
}

double CovKernel::integrand_over_radius(double c, double s, double r) const {
  switch (mode_) {
    case KernelMode::ClosedFormKostlan:
      return std::sqrt(static_cast<double>(scheme_.degree())) / (1.0 + r * r);
    case KernelMode::ClosedFormKac: {
      const int d = scheme_.degree();
      const double v = c * c * kac_phi(d, r * std::abs(c)) + s * s * kac_phi(d, r * std::abs(s));
      return std::sqrt(clamp_determinant(v, v));
    }
    case KernelMode::Series: break;
  }
  const double re = std::max(r, 1e-6);
  return integrand(re * c, re * s) / re;
}

}  // namespace curvedepth

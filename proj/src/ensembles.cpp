#include "curvedepth/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "curvedepth/counter_rng.hpp"

namespace curvedepth {

double counter_normal(std::uint64_t seed, std::uint64_t trial, std::uint32_t j1, std::uint32_t j2) {
  const Philox4x32 gen({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const auto out = gen({static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), j1, j2});
  const std::uint64_t w0 = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  const std::uint64_t w1 = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = (static_cast<double>(w0 >> 11) + 1.0) * kScale;  // (0, 1]
  const double u2 = static_cast<double>(w1 >> 11) * kScale;          // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Kostlan: return "kostlan";
    case SchemeKind::KacSquare: return "kac";
    case SchemeKind::Custom: return "custom";
  }
  return "unknown";
}

CoefficientScheme::CoefficientScheme(SchemeKind kind, int degree, int homogeneous_degree, int span)
    : kind_(kind),
      degree_(degree),
      homogeneous_degree_(homogeneous_degree),
      span_(span),
      log_weights_(static_cast<std::size_t>(span) * span, -std::numeric_limits<double>::infinity()) {}

namespace {

// log of the multinomial d! / (j1! j2! j3!). Exact integer products while
// they stay below 2^53, lgamma beyond.
double log_multinomial(int d, int j1, int j2) {
  const int j3 = d - j1 - j2;
  // C(d, j1) * C(d - j1, j2); every partial product is an integer.
  auto binom = [](int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  const double exact = binom(d, j1) * binom(d - j1, j2);
  if (exact < 9.0e15) return std::log(exact);
  return std::lgamma(d + 1.0) - std::lgamma(j1 + 1.0) - std::lgamma(j2 + 1.0) - std::lgamma(j3 + 1.0);
}

}  // namespace

CoefficientScheme CoefficientScheme::kostlan(int degree) {
  if (degree < 1) throw std::invalid_argument("Kostlan degree must be >= 1");
  CoefficientScheme s(SchemeKind::Kostlan, degree, degree, degree + 1);
  for (int j1 = 0; j1 <= degree; ++j1) {
    for (int j2 = 0; j1 + j2 <= degree; ++j2) {
      s.log_weights_[static_cast<std::size_t>(j1) * s.span_ + j2] = 0.5 * log_multinomial(degree, j1, j2);
    }
  }
  return s;
}

CoefficientScheme CoefficientScheme::kac_square(int degree) {
  if (degree < 1) throw std::invalid_argument("Kac degree must be >= 1");
  CoefficientScheme s(SchemeKind::KacSquare, degree, 2 * degree, degree + 1);
  std::fill(s.log_weights_.begin(), s.log_weights_.end(), 0.0);
  return s;
}

CoefficientScheme CoefficientScheme::custom(std::span<const Term> weights) {
  if (weights.empty()) throw std::invalid_argument("custom scheme has no weights");
  int max_index = 0;
  int top = 0;
  for (const Term& t : weights) {
    if (t.j1 < 0 || t.j2 < 0) throw std::invalid_argument("negative exponent in custom scheme");
    if (!std::isfinite(t.coeff) || !(t.coeff > 0.0)) {
      throw std::invalid_argument("custom scheme weights must be finite and positive");
    }
    max_index = std::max({max_index, t.j1, t.j2});
    top = std::max(top, t.j1 + t.j2);
  }
  if (top < 1) throw std::invalid_argument("custom scheme must have degree >= 1");
  CoefficientScheme s(SchemeKind::Custom, top, top, max_index + 1);
  for (const Term& t : weights) {
    s.log_weights_[static_cast<std::size_t>(t.j1) * s.span_ + t.j2] = std::log(t.coeff);
  }
  return s;
}

bool CoefficientScheme::contains(int j1, int j2) const noexcept {
  return std::isfinite(log_weight(j1, j2));
}

double CoefficientScheme::log_weight(int j1, int j2) const noexcept {
  if (j1 < 0 || j2 < 0 || j1 >= span_ || j2 >= span_) return -std::numeric_limits<double>::infinity();
  return log_weights_[static_cast<std::size_t>(j1) * span_ + j2];
}

double CoefficientScheme::weight(int j1, int j2) const noexcept { return std::exp(log_weight(j1, j2)); }

std::string CoefficientScheme::name() const { return to_string(kind_); }

CoefficientScheme load_custom_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open custom scheme file: " + path.string());
  std::vector<Term> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Term t;
    if (!(fields >> t.j1)) continue;
    std::string rest;
    if (!(fields >> t.j2 >> t.coeff) || (fields >> rest)) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected \"j1 j2 weight\"");
    }
    terms.push_back(t);
  }
  return CoefficientScheme::custom(terms);
}

PolySample sample(const CoefficientScheme& scheme, const SampleStream& stream, std::uint64_t trial) {
  const int span = scheme.span();
  std::vector<double> grid(static_cast<std::size_t>(span) * span, 0.0);
  for (int j1 = 0; j1 < span; ++j1) {
    for (int j2 = 0; j2 < span; ++j2) {
      if (!scheme.contains(j1, j2)) continue;
      const double a = counter_normal(stream.master_seed, trial, static_cast<std::uint32_t>(j1),
                                      static_cast<std::uint32_t>(j2));
      grid[static_cast<std::size_t>(j1) * span + j2] = a * scheme.weight(j1, j2);
    }
  }
  return PolySample(scheme.homogeneous_degree(), span, std::move(grid), trial);
}

}  // namespace curvedepth

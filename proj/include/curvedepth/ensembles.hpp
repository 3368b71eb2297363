#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "curvedepth/polynomial.hpp"

namespace curvedepth {

enum class SchemeKind { Kostlan, KacSquare, Custom };

std::string to_string(SchemeKind kind);

/// Deterministic coefficient weights c_J of a Gaussian polynomial ensemble
/// f = sum_J a_J c_J x^j1 y^j2 with a_J i.i.d. N(0, 1).
///
/// Weights are stored as logarithms so large Kostlan degrees stay finite;
/// absent monomials carry log-weight -infinity.
class CoefficientScheme {
 public:
  /// c_J = sqrt(d! / (j1! j2! (d - j1 - j2)!)) for j1 + j2 <= d.
  static CoefficientScheme kostlan(int degree);

  /// c_J = 1 for 0 <= j1, j2 <= d. The homogenization degree is 2d.
  static CoefficientScheme kac_square(int degree);

  /// Explicit weight table; the degree is the largest total degree present.
  /// Throws std::invalid_argument on non-positive or non-finite weights.
  static CoefficientScheme custom(std::span<const Term> weights);

  SchemeKind kind() const noexcept { return kind_; }

  /// The ensemble parameter d (for Kac, the per-variable degree).
  int degree() const noexcept { return degree_; }

  /// Degree of the projective curve: max j1 + j2 over the support.
  int homogeneous_degree() const noexcept { return homogeneous_degree_; }

  /// Grid side length; indices run over 0 <= j1, j2 < span.
  int span() const noexcept { return span_; }

  bool contains(int j1, int j2) const noexcept;
  double log_weight(int j1, int j2) const noexcept;
  double weight(int j1, int j2) const noexcept;

  /// Human-readable identifier, e.g. "kostlan" or "kac".
  std::string name() const;

 private:
  CoefficientScheme(SchemeKind kind, int degree, int homogeneous_degree, int span);

  SchemeKind kind_;
  int degree_;
  int homogeneous_degree_;
  int span_;
  std::vector<double> log_weights_;
};

/// Parses a custom scheme file: one "j1 j2 weight" record per line, blank
/// lines and '#' comments ignored.
CoefficientScheme load_custom_scheme(const std::filesystem::path& path);

/// Counter-based source of coefficient vectors. Trial k is a pure function
/// of (master_seed, k).
struct SampleStream {
  std::uint64_t master_seed = 0;
};

/// Draws trial `trial` of the ensemble: coefficient (j1, j2) is a_J * c_J
/// with a_J keyed by (master_seed, trial, j1, j2).
PolySample sample(const CoefficientScheme& scheme, const SampleStream& stream, std::uint64_t trial);

}  // namespace curvedepth

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvedepth/ensembles.hpp"
#include "curvedepth/geometry.hpp"

namespace curvedepth {

struct MonteCarloConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  /// Icosphere level; negative selects default_subdivision_level(degree).
  int subdivision_level = -1;
  /// Worker threads; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Samples are replaced by F(R^T P) before extraction when set.
  std::optional<Mat3> rotation;
};

struct MonteCarloResult {
  double mean = 0.0;
  double std_error = 0.0;
  /// histogram[k] = number of accepted trials with depth k.
  std::vector<std::size_t> histogram;
  std::size_t trials = 0;
  std::size_t accepted = 0;
  std::size_t discarded = 0;
  std::map<std::string, std::size_t> discard_reasons;
  /// Mean and standard error of DepthSampleReport::angular_count.
  double angular_mean = 0.0;
  double angular_std_error = 0.0;
  int curve_degree = 0;
  int subdivision_level = 0;

  double discard_fraction() const { return trials ? static_cast<double>(discarded) / trials : 0.0; }
};

/// More than 10% of the trials could not be resolved on the mesh.
class ExcessiveDiscards : public std::runtime_error {
 public:
  ExcessiveDiscards(const std::string& what, MonteCarloResult result)
      : std::runtime_error(what), result_(std::move(result)) {}
  const MonteCarloResult& result() const noexcept { return result_; }

 private:
  MonteCarloResult result_;
};

/// Depth of [0:0:1] over `cfg.trials` curves drawn from `scheme`. Trial k uses
/// sample(scheme, {cfg.seed}, k); results are reduced in trial order, so the
/// output does not depend on the thread count.
MonteCarloResult monte_carlo_depth(const CoefficientScheme& scheme, const MonteCarloConfig& cfg);

}  // namespace curvedepth

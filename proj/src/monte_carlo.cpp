#include "curvedepth/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "curvedepth/curvetopo.hpp"
#include "curvedepth/sphere_mesh.hpp"

namespace curvedepth {

namespace {

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanAndError summarize(const std::vector<double>& xs) {
  MeanAndError r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / xs.size();
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.std_error = std::sqrt(ss / (xs.size() - 1) / xs.size());
  return r;
}

}  // namespace

MonteCarloResult monte_carlo_depth(const CoefficientScheme& scheme, const MonteCarloConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int curve_degree = scheme.homogeneous_degree();
  const int level = cfg.subdivision_level >= 0 ? cfg.subdivision_level : default_subdivision_level(curve_degree);
  const SphereMesh mesh = make_icosphere(level);
  const SampleStream stream{cfg.seed};

  std::vector<DepthSampleReport> reports(cfg.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      for (std::size_t k; !failed && (k = next.fetch_add(1)) < cfg.trials;) {
        PolySample poly = sample(scheme, stream, k);
        if (cfg.rotation) poly = rotated(poly, *cfg.rotation);
        reports[k] = try_depth_of_sample(poly, mesh);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.trials));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  MonteCarloResult result;
  result.trials = cfg.trials;
  result.curve_degree = curve_degree;
  result.subdivision_level = level;
  std::vector<double> depths;
  std::vector<double> counts;
  for (const DepthSampleReport& r : reports) {
    if (r.discarded) {
      ++result.discarded;
      ++result.discard_reasons[r.reason];
      continue;
    }
    depths.push_back(r.depth);
    counts.push_back(r.angular_count);
    if (result.histogram.size() <= static_cast<std::size_t>(r.depth)) result.histogram.resize(r.depth + 1, 0);
    ++result.histogram[r.depth];
  }
  result.accepted = depths.size();
  const MeanAndError d = summarize(depths);
  const MeanAndError c = summarize(counts);
  result.mean = d.mean;
  result.std_error = d.std_error;
  result.angular_mean = c.mean;
  result.angular_std_error = c.std_error;

  if (result.discard_fraction() > 0.1) {
    throw ExcessiveDiscards(std::to_string(result.discarded) + " of " + std::to_string(result.trials) +
                                " trials discarded",
                            std::move(result));
  }
  return result;
}

}  // namespace curvedepth

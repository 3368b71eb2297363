#include <cmath>

#include "doctest.h"

#include "curvedepth/monte_carlo.hpp"

using namespace curvedepth;

namespace {

// P(depth = 1) for the Kostlan conic by exact eigenvalue classification of
// GOE matrices, 4e6 draws (tests/oracles/conic_depth_goe.py).
constexpr double kConicDepth = 0.31344;
constexpr double kConicDepthError = 0.00023;

}  // namespace

TEST_CASE("Kostlan conic depth matches the eigenvalue oracle") {
  MonteCarloConfig cfg;
  cfg.trials = 4000;
  cfg.seed = 2024;
  const MonteCarloResult r = monte_carlo_depth(CoefficientScheme::kostlan(2), cfg);
  CHECK(r.accepted + r.discarded == r.trials);
  CHECK(r.discard_fraction() < 0.02);
  const double sigma = std::hypot(r.std_error, kConicDepthError);
  CHECK(std::abs(r.mean - kConicDepth) < 3.0 * sigma);
  REQUIRE(r.histogram.size() <= 2);
  CHECK(r.histogram[0] + (r.histogram.size() > 1 ? r.histogram[1] : 0) == r.accepted);
}

TEST_CASE("angular count averages to the integral term") {
  MonteCarloConfig cfg;
  cfg.trials = 2000;
  cfg.seed = 77;
  for (int d : {2, 4}) {
    const MonteCarloResult r = monte_carlo_depth(CoefficientScheme::kostlan(d), cfg);
    CAPTURE(d);
    CHECK(std::abs(r.angular_mean - std::sqrt(d) / 2.0) < 3.0 * r.angular_std_error);
  }
}

TEST_CASE("results do not depend on the thread count") {
  MonteCarloConfig cfg;
  cfg.trials = 300;
  cfg.seed = 5;
  cfg.threads = 1;
  const MonteCarloResult a = monte_carlo_depth(CoefficientScheme::kostlan(5), cfg);
  cfg.threads = 4;
  const MonteCarloResult b = monte_carlo_depth(CoefficientScheme::kostlan(5), cfg);
  CHECK(a.histogram == b.histogram);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.angular_mean == b.angular_mean);
  CHECK(a.discard_reasons == b.discard_reasons);
}

TEST_CASE("identity rotation leaves the estimate unchanged") {
  MonteCarloConfig cfg;
  cfg.trials = 200;
  cfg.seed = 9;
  const MonteCarloResult a = monte_carlo_depth(CoefficientScheme::kostlan(4), cfg);
  cfg.rotation = identity3();
  const MonteCarloResult b = monte_carlo_depth(CoefficientScheme::kostlan(4), cfg);
  CHECK(a.histogram == b.histogram);
}

TEST_CASE("mesh refinement moves the mean by less than its standard error") {
  MonteCarloConfig cfg;
  cfg.trials = 1000;
  cfg.seed = 31;
  const MonteCarloResult a = monte_carlo_depth(CoefficientScheme::kostlan(4), cfg);
  cfg.subdivision_level = a.subdivision_level + 1;
  const MonteCarloResult b = monte_carlo_depth(CoefficientScheme::kostlan(4), cfg);
  CHECK(std::abs(a.mean - b.mean) < a.std_error);
}

TEST_CASE("a mesh too coarse for the curves raises ExcessiveDiscards") {
  MonteCarloConfig cfg;
  cfg.trials = 50;
  cfg.subdivision_level = 0;
  CHECK_THROWS_AS(monte_carlo_depth(CoefficientScheme::kostlan(8), cfg), ExcessiveDiscards);
  try {
    monte_carlo_depth(CoefficientScheme::kostlan(8), cfg);
  } catch (const ExcessiveDiscards& e) {
    CHECK(e.result().discard_fraction() > 0.1);
    CHECK(!e.result().discard_reasons.empty());
  }
  cfg.trials = 0;
  CHECK_THROWS_AS(monte_carlo_depth(CoefficientScheme::kostlan(2), cfg), std::invalid_argument);
}

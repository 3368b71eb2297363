#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "doctest.h"

#include "curvedepth/counter_rng.hpp"
#include "curvedepth/ensembles.hpp"

using namespace curvedepth;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32({0, 0})(C{0, 0, 0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32({0xffffffff, 0xffffffff})(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32({0xa4093822, 0x299f31d0})(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter normals: moments") {
  const int n = 100000;
  double sum = 0.0;
  double sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z = counter_normal(12345, k, 0, 0);
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var > 0.98);
  CHECK(var < 1.02);
}

TEST_CASE("counter normals: Kolmogorov-Smirnov") {
  const int n = 10000;
  std::vector<double> z;
  for (int k = 0; k < n; ++k) z.push_back(counter_normal(99, k / 7, k % 7, 3));
  std::sort(z.begin(), z.end());
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
    dmax = std::max({dmax, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
  }
  // 1% critical value 1.628 / sqrt(n).
  CHECK(dmax < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampling is a pure function of (seed, trial)") {
  const CoefficientScheme k = CoefficientScheme::kostlan(6);
  const PolySample a = sample(k, SampleStream{42}, 17);
  const PolySample b = sample(k, SampleStream{42}, 17);
  const PolySample c = sample(k, SampleStream{42}, 18);
  CHECK(a.grid() == b.grid());
  CHECK(a.grid() != c.grid());
  CHECK(a.seed_id() == 17);
}

TEST_CASE("Kostlan weights") {
  const CoefficientScheme k1 = CoefficientScheme::kostlan(1);
  CHECK(k1.weight(0, 0) == 1.0);
  CHECK(k1.weight(1, 0) == 1.0);
  CHECK(k1.weight(0, 1) == 1.0);
  CHECK(!k1.contains(1, 1));

  // sum_J c_J^2 x^2j1 y^2j2 = (1 + x^2 + y^2)^d
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int d : {3, 10, 25}) {
    const CoefficientScheme k = CoefficientScheme::kostlan(d);
    CHECK(k.homogeneous_degree() == d);
    for (int i = 0; i < 20; ++i) {
      const double x = u(rng);
      const double y = u(rng);
      double s = 0.0;
      for (int j1 = 0; j1 <= d; ++j1) {
        for (int j2 = 0; j1 + j2 <= d; ++j2) {
          const double w = k.weight(j1, j2);
          s += w * w * std::pow(x, 2 * j1) * std::pow(y, 2 * j2);
        }
      }
      const double want = std::pow(1.0 + x * x + y * y, d);
      CHECK(std::abs(s - want) <= 1e-10 * want);
    }
  }
  const CoefficientScheme big = CoefficientScheme::kostlan(400);
  CHECK(std::isfinite(big.log_weight(133, 133)));
  CHECK(big.log_weight(0, 0) == 0.0);
}

TEST_CASE("Kac square support") {
  const CoefficientScheme k = CoefficientScheme::kac_square(3);
  CHECK(k.homogeneous_degree() == 6);
  CHECK(k.span() == 4);
  CHECK(k.weight(3, 3) == 1.0);
  CHECK(!k.contains(4, 0));
  const PolySample p = sample(k, SampleStream{3}, 0);
  CHECK(p.degree() == 6);
}

TEST_CASE("custom scheme files") {
  const auto path = std::filesystem::temp_directory_path() / "curvedepth_custom_scheme.txt";
  {
    std::ofstream f(path);
    f << "# j1 j2 weight\n0 0 1\n1 0 2.0\n\n0 2 0.5  # quadratic\n";
  }
  const CoefficientScheme c = load_custom_scheme(path);
  CHECK(c.kind() == SchemeKind::Custom);
  CHECK(c.degree() == 2);
  CHECK(c.weight(1, 0) == 2.0);
  CHECK(!c.contains(1, 1));
  {
    std::ofstream f(path);
    f << "0 0 -1\n";
  }
  CHECK_THROWS_AS(load_custom_scheme(path), std::invalid_argument);
  std::filesystem::remove(path);
}

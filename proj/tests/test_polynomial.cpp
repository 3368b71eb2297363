#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "curvedepth/ensembles.hpp"
#include "curvedepth/polynomial.hpp"

using namespace curvedepth;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return normalized({n(rng), n(rng), n(rng)});
}

PolySample unit_circle() {
  const std::vector<Term> t{{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -1.0}};
  return PolySample(2, t);
}

}  // namespace

TEST_CASE("radial evaluation of hand-checked polynomials") {
  const PolySample circle = unit_circle();
  const RadialEval a = eval_with_radial(circle, 0.0, 0.0);
  CHECK(a.f == -1.0);
  CHECK(a.fx == 0.0);
  CHECK(a.fy == 0.0);
  CHECK(a.t == 0.0);

  const RadialEval b = eval_with_radial(circle, 2.0, 0.0);
  CHECK(b.f == 3.0);
  CHECK(b.fx == 4.0);
  CHECK(b.fy == 0.0);
  CHECK(b.t == 8.0);

  const std::vector<Term> mono{{2, 1, 3.0}};
  const RadialEval c = eval_with_radial(PolySample(3, mono), 1.0, 2.0);
  CHECK(c.f == 6.0);
  CHECK(c.fx == 12.0);
  CHECK(c.fy == 3.0);
  CHECK(c.t == 18.0);
  CHECK(c.t == 3.0 * c.f);
}

TEST_CASE("degree must match the support") {
  const std::vector<Term> t{{1, 0, 1.0}, {0, 0, 2.0}};
  CHECK_NOTHROW(PolySample(1, t));
  CHECK_THROWS_AS(PolySample(2, t), std::invalid_argument);
  const std::vector<Term> bad{{1, 0, NAN}};
  CHECK_THROWS_AS(PolySample(1, bad), std::invalid_argument);
}

TEST_CASE("homogenization on the sphere") {
  const PolySample circle = unit_circle();
  CHECK(homogenize_and_eval_sphere(circle, {0.0, 0.0, 1.0}) == -1.0);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(homogenize_and_eval_sphere(circle, {h, 0.0, h}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(circle.eval_sphere({0.0, 0.0, 1.001}), std::invalid_argument);
}

TEST_CASE("antipodal parity") {
  std::mt19937_64 rng(7);
  for (int d : {4, 5}) {
    const PolySample p = sample(CoefficientScheme::kostlan(d), SampleStream{11}, 0);
    for (int i = 0; i < 100; ++i) {
      const Vec3 v = random_unit(rng);
      const double a = p.eval_sphere(v);
      const double b = p.eval_sphere(-v);
      CHECK(b == (d % 2 == 0 ? a : -a));
    }
  }
}

TEST_CASE("Euler identity and finite-difference gradient") {
  std::mt19937_64 rng(3);
  const PolySample p = sample(CoefficientScheme::kostlan(6), SampleStream{5}, 2);
  for (int i = 0; i < 50; ++i) {
    const Vec3 v = random_unit(rng);
    const HomogeneousEval e = p.eval_homogeneous_gradient(v);
    const double euler = dot(v, e.gradient);
    CHECK(std::abs(euler - 6.0 * e.value) <= 1e-10 * (1.0 + std::abs(6.0 * e.value)));
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
      Vec3 hi = v;
      Vec3 lo = v;
      hi[k] += h;
      lo[k] -= h;
      const double fd = (p.eval_homogeneous(hi) - p.eval_homogeneous(lo)) / (2.0 * h);
      CHECK(std::abs(fd - e.gradient[k]) <= 1e-5 * (1.0 + std::abs(e.gradient[k])));
    }
  }
}

TEST_CASE("batch evaluation matches pointwise") {
  std::mt19937_64 rng(9);
  const PolySample p = sample(CoefficientScheme::kac_square(4), SampleStream{1}, 0);
  std::vector<Vec3> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(random_unit(rng));
  std::vector<double> out(pts.size());
  p.eval_homogeneous_batch(pts, out);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(out[i] == p.eval_homogeneous(pts[i]));
}

TEST_CASE("affine chart agrees with the homogenization") {
  const PolySample p = sample(CoefficientScheme::kostlan(5), SampleStream{2}, 4);
  for (double x : {-1.5, 0.25, 2.0}) {
    for (double y : {-0.5, 0.75}) {
      const double f = p.eval_with_radial(x, y).f;
      CHECK(p.eval_homogeneous({x, y, 1.0}) == doctest::Approx(f).epsilon(1e-13));
    }
  }
}

TEST_CASE("rotation composes with evaluation") {
  std::mt19937_64 rng(21);
  const PolySample p = sample(CoefficientScheme::kostlan(5), SampleStream{8}, 1);
  const Mat3 r = axis_angle_rotation({1.0, 2.0, -0.5}, 0.9);
  const PolySample g = rotated(p, r);
  CHECK(g.degree() == 5);
  for (int i = 0; i < 40; ++i) {
    const Vec3 v = random_unit(rng);
    const double want = p.eval_homogeneous(transpose(r) * v);
    CHECK(g.eval_homogeneous(v) == doctest::Approx(want).epsilon(1e-11).scale(1.0));
  }
  const PolySample same = rotated(p, identity3());
  for (int j1 = 0; j1 <= 5; ++j1) {
    for (int j2 = 0; j1 + j2 <= 5; ++j2) CHECK(same.coeff(j1, j2) == doctest::Approx(p.coeff(j1, j2)));
  }
}

#include "curvedepth/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvedepth {

PolySample::PolySample(int degree, std::span<const Term> terms, std::uint64_t seed_id)
    : degree_(degree), span_(0), seed_id_(seed_id) {
  if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  int max_index = 0;
  for (const Term& t : terms) {
    if (t.j1 < 0 || t.j2 < 0) throw std::invalid_argument("negative monomial exponent");
    max_index = std::max({max_index, t.j1, t.j2});
  }
  span_ = max_index + 1;
  grid_.assign(static_cast<std::size_t>(span_) * span_, 0.0);
  for (const Term& t : terms) grid_[static_cast<std::size_t>(t.j1) * span_ + t.j2] += t.coeff;
  validate();
}

PolySample::PolySample(int degree, int span, std::vector<double> grid, std::uint64_t seed_id)
    : degree_(degree), span_(span), grid_(std::move(grid)), seed_id_(seed_id) {
  if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  if (span < 1 || grid_.size() != static_cast<std::size_t>(span) * span) {
    throw std::invalid_argument("coefficient grid size does not match span");
  }
  validate();
}

void PolySample::validate() {
  int top = -1;
  for (int j1 = 0; j1 < span_; ++j1) {
    for (int j2 = 0; j2 < span_; ++j2) {
      const double c = grid_[static_cast<std::size_t>(j1) * span_ + j2];
      if (!std::isfinite(c)) throw std::invalid_argument("non-finite polynomial coefficient");
      if (c != 0.0) top = std::max(top, j1 + j2);
    }
  }
  if (top != degree_) {
    throw std::invalid_argument("declared degree " + std::to_string(degree_) +
                                " does not match support degree " + std::to_string(top));
  }
}

double PolySample::coeff(int j1, int j2) const noexcept {
  if (j1 < 0 || j2 < 0 || j1 >= span_ || j2 >= span_) return 0.0;
  return grid_[static_cast<std::size_t>(j1) * span_ + j2];
}

RadialEval PolySample::eval_with_radial(double x, double y) const noexcept {
  double f = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  for (int j1 = span_ - 1; j1 >= 0; --j1) {
    const double* row = grid_.data() + static_cast<std::size_t>(j1) * span_;
    double p = 0.0;
    double dp = 0.0;
    for (int j2 = span_ - 1; j2 >= 0; --j2) {
      dp = dp * y + p;
      p = p * y + row[j2];
    }
    fx = fx * x + f;
    f = f * x + p;
    fy = fy * x + dp;
  }
  return {f, fx, fy, x * fx + y * fy};
}

namespace {

void fill_powers(double base, int n, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * base;
}

}  // namespace

double PolySample::eval_homogeneous(const Vec3& p) const noexcept {
  std::vector<double> px, py, pz;
  fill_powers(p[0], degree_, px);
  fill_powers(p[1], degree_, py);
  fill_powers(p[2], degree_, pz);
  double sum = 0.0;
  for (int j1 = 0; j1 < span_; ++j1) {
    const double* row = grid_.data() + static_cast<std::size_t>(j1) * span_;
    const int j2_max = std::min(span_ - 1, degree_ - j1);
    for (int j2 = 0; j2 <= j2_max; ++j2) {
      if (row[j2] == 0.0) continue;
      sum += row[j2] * px[j1] * py[j2] * pz[degree_ - j1 - j2];
    }
  }
  return sum;
}

HomogeneousEval PolySample::eval_homogeneous_gradient(const Vec3& p) const noexcept {
  std::vector<double> px, py, pz;
  fill_powers(p[0], degree_, px);
  fill_powers(p[1], degree_, py);
  fill_powers(p[2], degree_, pz);
  HomogeneousEval out;
  for (int j1 = 0; j1 < span_; ++j1) {
    const double* row = grid_.data() + static_cast<std::size_t>(j1) * span_;
    const int j2_max = std::min(span_ - 1, degree_ - j1);
    for (int j2 = 0; j2 <= j2_max; ++j2) {
      const double c = row[j2];
      if (c == 0.0) continue;
      const int j3 = degree_ - j1 - j2;
      out.value += c * px[j1] * py[j2] * pz[j3];
      if (j1 > 0) out.gradient[0] += c * j1 * px[j1 - 1] * py[j2] * pz[j3];
      if (j2 > 0) out.gradient[1] += c * j2 * px[j1] * py[j2 - 1] * pz[j3];
      if (j3 > 0) out.gradient[2] += c * j3 * px[j1] * py[j2] * pz[j3 - 1];
    }
  }
  return out;
}

double PolySample::eval_sphere(const Vec3& p) const {
  if (!(std::abs(norm(p) - 1.0) <= 1e-12)) {
    throw std::invalid_argument("sphere evaluation requires a unit vector");
  }
  return eval_homogeneous(p);
}

void PolySample::eval_homogeneous_batch(std::span<const Vec3> points, std::span<double> out) const {
  if (points.size() != out.size()) throw std::invalid_argument("batch size mismatch");
  // Flattened nonzero terms; same product order as eval_homogeneous.
  struct Packed {
    double c;
    int j1, j2, j3;
  };
  std::vector<Packed> packed;
  for (int j1 = 0; j1 < span_; ++j1) {
    for (int j2 = 0; j2 < span_ && j1 + j2 <= degree_; ++j2) {
      const double c = grid_[static_cast<std::size_t>(j1) * span_ + j2];
      if (c != 0.0) packed.push_back({c, j1, j2, degree_ - j1 - j2});
    }
  }
  std::vector<double> px, py, pz;
  for (std::size_t i = 0; i < points.size(); ++i) {
    fill_powers(points[i][0], degree_, px);
    fill_powers(points[i][1], degree_, py);
    fill_powers(points[i][2], degree_, pz);
    double sum = 0.0;
    for (const Packed& t : packed) sum += t.c * px[t.j1] * py[t.j2] * pz[t.j3];
    out[i] = sum;
  }
}

namespace {

// Homogeneous ternary polynomial of degree m, coefficient of X^a Y^b Z^(m-a-b)
// stored at [a * (m + 1) + b].
struct Ternary {
  int m = 0;
  std::vector<double> c;

  explicit Ternary(int degree) : m(degree), c(static_cast<std::size_t>(degree + 1) * (degree + 1), 0.0) {}
  double& at(int a, int b) { return c[static_cast<std::size_t>(a) * (m + 1) + b]; }
  double at(int a, int b) const { return c[static_cast<std::size_t>(a) * (m + 1) + b]; }
};

Ternary multiply(const Ternary& p, const Ternary& q) {
  Ternary r(p.m + q.m);
  for (int a = 0; a <= p.m; ++a) {
    for (int b = 0; a + b <= p.m; ++b) {
      const double pc = p.at(a, b);
      if (pc == 0.0) continue;
      for (int a2 = 0; a2 <= q.m; ++a2) {
        for (int b2 = 0; a2 + b2 <= q.m; ++b2) {
          r.at(a + a2, b + b2) += pc * q.at(a2, b2);
        }
      }
    }
  }
  return r;
}

}  // namespace

PolySample rotated(const PolySample& poly, const Mat3& rotation) {
  const int d = poly.degree();
  // Q = R^T P, so Q_i = sum_k R[k][i] P_k.
  std::array<std::vector<Ternary>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    Ternary linear(1);
    linear.at(1, 0) = rotation[0][i];
    linear.at(0, 1) = rotation[1][i];
    linear.at(0, 0) = rotation[2][i];
    Ternary one(0);
    one.at(0, 0) = 1.0;
    powers[i].push_back(one);
    for (int k = 1; k <= d; ++k) powers[i].push_back(multiply(powers[i].back(), linear));
  }
  Ternary total(d);
  for (int j1 = 0; j1 <= d; ++j1) {
    for (int j2 = 0; j1 + j2 <= d; ++j2) {
      const double c = poly.coeff(j1, j2);
      if (c == 0.0) continue;
      const Ternary term = multiply(multiply(powers[0][j1], powers[1][j2]), powers[2][d - j1 - j2]);
      for (std::size_t k = 0; k < total.c.size(); ++k) total.c[k] += c * term.c[k];
    }
  }
  std::vector<double> grid(static_cast<std::size_t>(d + 1) * (d + 1), 0.0);
  for (int a = 0; a <= d; ++a) {
    for (int b = 0; a + b <= d; ++b) grid[static_cast<std::size_t>(a) * (d + 1) + b] = total.at(a, b);
  }
  return PolySample(d, d + 1, std::move(grid), poly.seed_id());
}

}  // namespace curvedepth

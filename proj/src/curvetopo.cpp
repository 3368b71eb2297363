#include "curvedepth/curvetopo.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "curvedepth/errors.hpp"

namespace curvedepth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrapped_delta(const Vec3& from, const Vec3& to) {
  double d = std::atan2(to[1], to[0]) - std::atan2(from[1], from[0]);
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

void check_pole_distance(const Vec3& p) {
  if (std::hypot(p[0], p[1]) < kPoleExclusion) throw DegenerateSample("curve passes within 1e-3 of a pole");
}

bool has_zero_vertex(const std::vector<double>& values) {
  for (double v : values) {
    if (v == 0.0) return true;
  }
  return false;
}

LoopSet extract_on(const PolySample& poly, const SphereMesh& mesh, const std::vector<double>& value) {
  const std::size_t n_edges = mesh.edges.size();
  std::vector<Vec3> crossing(n_edges);
  std::vector<char> crossed(n_edges, 0);
  for (std::size_t e = 0; e < n_edges; ++e) {
    const int a = mesh.edges[e][0];
    const int b = mesh.edges[e][1];
    const double fa = value[a];
    const double fb = value[b];
    if ((fa > 0.0) == (fb > 0.0)) continue;
    const double t = fa / (fa - fb);
    const Vec3& va = mesh.vertices[a];
    const Vec3& vb = mesh.vertices[b];
    crossing[e] = normalized(va + t * (vb - va));
    crossed[e] = 1;
  }

  // next[e] is the crossing reached from crossing e inside the triangle where
  // the segment leaves e.
  std::vector<int> next(n_edges, -1);
  for (std::size_t tri = 0; tri < mesh.triangles.size(); ++tri) {
    const auto& v = mesh.triangles[tri];
    const std::array<bool, 3> pos{value[v[0]] > 0.0, value[v[1]] > 0.0, value[v[2]] > 0.0};
    if (pos[0] == pos[1] && pos[1] == pos[2]) continue;
    int lone = 0;
    if (pos[1] != pos[0] && pos[1] != pos[2]) lone = 1;
    if (pos[2] != pos[0] && pos[2] != pos[1]) lone = 2;
    // The lone corner lies to the left of edge(lone) -> edge(lone + 2).
    int from = mesh.triangle_edges[tri][lone];
    int to = mesh.triangle_edges[tri][(lone + 2) % 3];
    if (!pos[lone]) std::swap(from, to);
    if (next[from] != -1) throw DegenerateSample("crossing has two successors");
    next[from] = to;
  }

  LoopSet set;
  set.curve_degree = poly.degree();
  std::vector<int> loop_of(n_edges, -1);
  for (std::size_t start = 0; start < n_edges; ++start) {
    if (!crossed[start] || loop_of[start] != -1) continue;
    CurveLoop loop;
    const int id = static_cast<int>(set.loops.size());
    int e = static_cast<int>(start);
    do {
      if (e < 0) throw DegenerateSample("open chain in contour extraction");
      if (loop_of[e] != -1) throw DegenerateSample("contour chain merges into another loop");
      loop_of[e] = id;
      check_pole_distance(crossing[e]);
      loop.points.push_back(crossing[e]);
      loop.edges.push_back(e);
      e = next[e];
    } while (e != static_cast<int>(start));
    if (loop.points.size() < 6) throw DegenerateSample("loop with fewer than 6 points");
    set.loops.push_back(std::move(loop));
  }

  for (std::size_t i = 0; i < set.loops.size(); ++i) {
    CurveLoop& loop = set.loops[i];
    const int partner = loop_of[mesh.antipodal_edge[loop.edges.front()]];
    for (int e : loop.edges) {
      if (loop_of[mesh.antipodal_edge[e]] != partner) throw DegenerateSample("loop has no consistent antipode");
    }
    loop.is_self_antipodal = partner == static_cast<int>(i);
    if (!loop.is_self_antipodal) loop.partner = partner;
    loop.winding = winding(loop);
    if (std::abs(loop.winding) > 1) throw DegenerateSample("loop winds more than once around the axis");
  }
  for (const CurveLoop& loop : set.loops) {
    if (loop.partner && std::abs(set.loops[*loop.partner].winding) != std::abs(loop.winding)) {
      throw DegenerateSample("antipodal loops disagree on winding");
    }
  }
  return set;
}

}  // namespace

int winding(const CurveLoop& loop) {
  const std::size_t n = loop.points.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    check_pole_distance(loop.points[i]);
    total += wrapped_delta(loop.points[i], loop.points[(i + 1) % n]);
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.1) throw DegenerateSample("non-integral winding sum");
  return static_cast<int>(rounded);
}

double angular_variation(const CurveLoop& loop) {
  const std::size_t n = loop.points.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::abs(wrapped_delta(loop.points[i], loop.points[(i + 1) % n]));
  return total;
}

LoopSet extract_loops(const PolySample& poly, const SphereMesh& mesh) {
  std::vector<double> value(mesh.vertices.size());
  poly.eval_homogeneous_batch(mesh.vertices, value);
  if (!has_zero_vertex(value)) return extract_on(poly, mesh, value);

  // A vertex on the curve has no sign; turn the mesh about the axis by fixed
  // irrational angles until none is.
  for (double angle : {0.3819660112501051, 0.7071067811865476, 1.1415926535897931}) {
    const SphereMesh turned = rotated_about_z(mesh, angle);
    poly.eval_homogeneous_batch(turned.vertices, value);
    if (has_zero_vertex(value)) continue;
    LoopSet set = extract_on(poly, turned, value);
    set.mesh_rotation = angle;
    return set;
  }
  throw DegenerateSample("curve passes through mesh vertices under every rotation");
}

DepthSampleReport classify_loops(const LoopSet& set) {
  DepthSampleReport r;
  double variation = 0.0;
  for (std::size_t i = 0; i < set.loops.size(); ++i) {
    const CurveLoop& loop = set.loops[i];
    variation += angular_variation(loop);
    if (loop.is_self_antipodal) {
      ++r.n_pseudolines;
      ++r.n_components_rp2;
      continue;
    }
    // Count each antipodal pair once, at its lower id.
    if (loop.partner && *loop.partner < static_cast<int>(i)) continue;
    ++r.n_components_rp2;
    if (std::abs(loop.winding) == 1) ++r.depth;
  }
  r.has_pseudoline = r.n_pseudolines > 0;
  // Both lifts of every affine arc are on the sphere.
  r.angular_count = variation / (2.0 * kTwoPi);
  return r;
}

int harnack_bound(int curve_degree) { return 1 + (curve_degree - 1) * (curve_degree - 2) / 2; }

std::optional<std::string> invariant_violation(const DepthSampleReport& r, int curve_degree) {
  if (r.depth > curve_degree / 2) {
    return "depth " + std::to_string(r.depth) + " exceeds floor(d/2) for d = " + std::to_string(curve_degree);
  }
  if (r.n_components_rp2 > harnack_bound(curve_degree)) {
    return std::to_string(r.n_components_rp2) + " components exceed the Harnack bound " +
           std::to_string(harnack_bound(curve_degree));
  }
  const int expected = curve_degree % 2;
  if (r.n_pseudolines != expected) {
    return std::to_string(r.n_pseudolines) + " pseudolines for degree " + std::to_string(curve_degree);
  }
  return std::nullopt;
}

DepthSampleReport depth_of_sample(const PolySample& poly, const SphereMesh& mesh) {
  const LoopSet set = extract_loops(poly, mesh);
  DepthSampleReport r = classify_loops(set);
  if (auto why = invariant_violation(r, poly.degree())) throw DegenerateSample(*why);
  return r;
}

DepthSampleReport try_depth_of_sample(const PolySample& poly, const SphereMesh& mesh) {
  try {
    return depth_of_sample(poly, mesh);
  } catch (const DegenerateSample& e) {
    DepthSampleReport r;
    r.discarded = true;
    r.reason = e.what();
    return r;
  }
}

void write_loops(std::ostream& os, const LoopSet& set) {
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < set.loops.size(); ++i) {
    const CurveLoop& loop = set.loops[i];
    os << "loop " << i << ' ' << loop.winding << ' ' << (loop.is_self_antipodal ? 1 : 0) << '\n';
    for (const Vec3& p : loop.points) os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace curvedepth

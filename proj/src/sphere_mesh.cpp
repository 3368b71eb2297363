#include "curvedepth/sphere_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace curvedepth {

namespace {

// Key for exact coordinate lookup when pairing antipodes.
std::array<double, 3> key_of(const Vec3& v) { return {v[0], v[1], v[2]}; }

void build_topology(SphereMesh& mesh) {
  std::map<std::pair<int, int>, int> edge_index;
  mesh.edges.clear();
  mesh.edge_triangles.clear();
  mesh.triangle_edges.assign(mesh.triangles.size(), {-1, -1, -1});
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = mesh.triangles[t][k];
      const int b = mesh.triangles[t][(k + 1) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, static_cast<int>(mesh.edges.size()));
      if (inserted) {
        mesh.edges.push_back({key.first, key.second});
        mesh.edge_triangles.push_back({static_cast<int>(t), -1});
      } else {
        if (mesh.edge_triangles[it->second][1] != -1) throw std::logic_error("non-manifold edge in sphere mesh");
        mesh.edge_triangles[it->second][1] = static_cast<int>(t);
      }
      mesh.triangle_edges[t][k] = it->second;
    }
  }
  for (const auto& et : mesh.edge_triangles) {
    if (et[1] == -1) throw std::logic_error("open edge in sphere mesh");
  }

  std::map<std::array<double, 3>, int> by_coord;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) by_coord.emplace(key_of(mesh.vertices[i]), static_cast<int>(i));
  mesh.antipodal_vertex.assign(mesh.vertices.size(), -1);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto it = by_coord.find(key_of(-mesh.vertices[i]));
    if (it == by_coord.end()) throw std::logic_error("sphere mesh is not antipodally symmetric");
    mesh.antipodal_vertex[i] = it->second;
  }
  mesh.antipodal_edge.assign(mesh.edges.size(), -1);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const int a = mesh.antipodal_vertex[mesh.edges[e][0]];
    const int b = mesh.antipodal_vertex[mesh.edges[e][1]];
    const auto key = std::minmax(a, b);
    const auto it = edge_index.find({key.first, key.second});
    if (it == edge_index.end()) throw std::logic_error("antipodal edge missing from sphere mesh");
    mesh.antipodal_edge[e] = it->second;
  }

  mesh.north_pole = mesh.south_pole = -1;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    if (v[0] == 0.0 && v[1] == 0.0) (v[2] > 0 ? mesh.north_pole : mesh.south_pole) = static_cast<int>(i);
  }
}

SphereMesh icosahedron() {
  SphereMesh m;
  const double z = 1.0 / std::sqrt(5.0);
  const double rho = 2.0 / std::sqrt(5.0);
  m.vertices.push_back({0.0, 0.0, 1.0});
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 5.0;
    m.vertices.push_back({rho * std::cos(a), rho * std::sin(a), z});
  }
  // Lower ring is the exact negation of the upper ring, so antipodes pair
  // bit-for-bit: vertex 6 + k = -(vertex 1 + k), at azimuth 36 + 72 (k + 2).
  for (int k = 0; k < 5; ++k) m.vertices.push_back(-m.vertices[1 + k]);
  m.vertices.push_back({0.0, 0.0, -1.0});

  auto upper = [](int k) { return 1 + ((k % 5) + 5) % 5; };
  // Lower-ring vertex sitting between upper k and k+1 in azimuth.
  auto lower = [](int k) { return 6 + (((k + 3) % 5) + 5) % 5; };
  for (int k = 0; k < 5; ++k) {
    m.triangles.push_back({0, upper(k), upper(k + 1)});
    m.triangles.push_back({upper(k), lower(k), upper(k + 1)});
    m.triangles.push_back({lower(k), lower(k + 1), upper(k + 1)});
    m.triangles.push_back({11, lower(k + 1), lower(k)});
  }
  return m;
}

SphereMesh subdivide(const SphereMesh& in) {
  SphereMesh out;
  out.vertices = in.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = midpoint.try_emplace({key.first, key.second}, static_cast<int>(out.vertices.size()));
    if (inserted) {
      const Vec3& p = in.vertices[key.first];
      const Vec3& q = in.vertices[key.second];
      // Symmetric in (p, q) and odd under negation, so antipodal edges give
      // exactly antipodal midpoints.
      out.vertices.push_back(normalized({p[0] + q[0], p[1] + q[1], p[2] + q[2]}));
    }
    return it->second;
  };
  for (const auto& t : in.triangles) {
    const int ab = mid(t[0], t[1]);
    const int bc = mid(t[1], t[2]);
    const int ca = mid(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  out.subdivision_level = in.subdivision_level + 1;
  return out;
}

}  // namespace

double SphereMesh::max_edge_length() const {
  double longest = 0.0;
  for (const auto& e : edges) longest = std::max(longest, norm(vertices[e[0]] - vertices[e[1]]));
  return longest;
}

SphereMesh make_icosphere(int level) {
  if (level < 0 || level > 9) throw std::invalid_argument("subdivision level must be in [0, 9]");
  SphereMesh m = icosahedron();
  for (int i = 0; i < level; ++i) m = subdivide(m);
  build_topology(m);
  return m;
}

SphereMesh rotated_about_z(const SphereMesh& mesh, double angle) {
  SphereMesh out = mesh;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (Vec3& v : out.vertices) {
    if (v[0] == 0.0 && v[1] == 0.0) continue;
    v = {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
  }
  // Rotation commutes with negation up to rounding; restore exact antipodes.
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    const auto j = static_cast<std::size_t>(out.antipodal_vertex[i]);
    if (j > i) out.vertices[j] = -out.vertices[i];
  }
  return out;
}

int default_subdivision_level(int curve_degree) {
  if (curve_degree < 1) throw std::invalid_argument("curve degree must be >= 1");
  // Longest edge per level, measured once; subdivision roughly halves it.
  static const std::vector<double> longest = [] {
    std::vector<double> v;
    SphereMesh m = icosahedron();
    for (int level = 0; level <= 9; ++level) {
      if (level > 0) m = subdivide(m);
      double l = 0.0;
      for (const auto& t : m.triangles) {
        for (int k = 0; k < 3; ++k) l = std::max(l, norm(m.vertices[t[k]] - m.vertices[t[(k + 1) % 3]]));
      }
      v.push_back(l);
    }
    return v;
  }();
  const double target = 0.5 / curve_degree;
  for (int level = 3; level <= 9; ++level) {
    if (longest[level] < target) return level;
  }
  return 9;
}

}  // namespace curvedepth

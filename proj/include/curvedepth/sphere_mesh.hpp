#pragma once

#include <array>
#include <vector>

#include "curvedepth/geometry.hpp"

namespace curvedepth {

/// Antipodally symmetric icosphere. The poles (0, 0, +1) and (0, 0, -1) are
/// vertices, so the axis through them meets the polyhedral surface only there.
///
/// Triangles are counter-clockwise seen from outside. Edge k of a triangle
/// joins its corners k and (k + 1) % 3.
struct SphereMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<std::array<int, 2>> edge_triangles;
  std::vector<int> antipodal_vertex;
  std::vector<int> antipodal_edge;
  int subdivision_level = 0;
  int north_pole = -1;
  int south_pole = -1;

  double max_edge_length() const;
};

/// Icosahedron refined `level` times by edge-midpoint subdivision projected to
/// the sphere. Antipodal vertex coordinates are exact negatives.
SphereMesh make_icosphere(int level);

/// Copy of `mesh` rotated about the z axis; keeps the poles and pairings.
SphereMesh rotated_about_z(const SphereMesh& mesh, double angle);

/// Smallest level (at least 3) whose longest edge is below 0.5 / degree.
int default_subdivision_level(int curve_degree);

}  // namespace curvedepth

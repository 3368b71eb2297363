#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "curvedepth/polynomial.hpp"
#include "curvedepth/sphere_mesh.hpp"

namespace curvedepth {

/// Crossings closer than this to the z axis are not trusted for winding.
inline constexpr double kPoleExclusion = 1e-3;

/// One closed component of {F = 0} on the sphere. The last point connects
/// back to the first. Traversal keeps F > 0 on the left (outward normal up).
struct CurveLoop {
  std::vector<Vec3> points;
  std::vector<int> edges;  // mesh edge carrying each point
  int winding = 0;
  bool is_self_antipodal = false;
  std::optional<int> partner;
};

struct LoopSet {
  std::vector<CurveLoop> loops;
  int curve_degree = 0;
  /// Rotation about z applied to the mesh to avoid vertices with F = 0.
  double mesh_rotation = 0.0;
};

/// Marching-triangles extraction with antipodal pairing and windings filled
/// in. Throws DegenerateSample on open chains, loops of fewer than 6 points,
/// crossings within kPoleExclusion of the poles, non-integral or |w| > 1
/// windings, or inconsistent antipodal pairing.
LoopSet extract_loops(const PolySample& poly, const SphereMesh& mesh);

/// round(sum of wrapped atan2 increments / 2 pi). Throws DegenerateSample if
/// the sum is further than 0.1 from an integer or a point is near a pole.
int winding(const CurveLoop& loop);

/// Sum of |atan2 increments| along the loop, in radians.
double angular_variation(const CurveLoop& loop);

struct DepthSampleReport {
  int depth = 0;
  int n_components_rp2 = 0;
  bool has_pseudoline = false;
  int n_pseudolines = 0;
  /// Total absolute angular variation of the affine curve divided by 2 pi;
  /// counts every oval by how much of the circle of directions it sweeps.
  double angular_count = 0.0;
  bool discarded = false;
  std::string reason;
};

/// Depth and component counts read off an extracted loop set, with no
/// invariant checks.
DepthSampleReport classify_loops(const LoopSet& loops);

/// Describes the first violated invariant (depth bound, Harnack bound,
/// pseudoline parity) or returns nullopt.
std::optional<std::string> invariant_violation(const DepthSampleReport& report, int curve_degree);

/// 1 + (d - 1)(d - 2) / 2.
int harnack_bound(int curve_degree);

/// Depth of [0:0:1] with respect to the curve. Throws DegenerateSample on
/// extraction failure or invariant violation.
DepthSampleReport depth_of_sample(const PolySample& poly, const SphereMesh& mesh);

/// As depth_of_sample, but returns a report marked discarded instead of
/// throwing DegenerateSample.
DepthSampleReport try_depth_of_sample(const PolySample& poly, const SphereMesh& mesh);

/// One record per loop: "loop <id> <winding> <self_antipodal>" followed by
/// one "X Y Z" line per point and a blank line.
void write_loops(std::ostream& os, const LoopSet& loops);

}  // namespace curvedepth

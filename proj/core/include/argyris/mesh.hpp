#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "argyris/errors.hpp"

namespace argyris {

using Point = Eigen::Vector2d;

enum class BoundaryLabel : std::uint8_t { Clamped, SimplySupported, Free };

const char* to_string(BoundaryLabel label);
BoundaryLabel parse_boundary_label(const std::string& text);

/// Boundary segment traversed counterclockwise, i.e. with the domain on the left of a -> b.
struct BoundaryEdge {
  int a = -1;
  int b = -1;
  BoundaryLabel label = BoundaryLabel::Clamped;
};

/// Conforming triangulation produced by newest-vertex bisection.
///
/// Triangles are stored counterclockwise as (v0, v1, v2) where (v0, v1) is the
/// refinement edge and v2 the newest vertex.  Vertex indices are never
/// renumbered by refinement.
struct Triangulation {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  int level = 0;
  /// Index of the triangle of the previous mesh containing each triangle; empty at level 0.
  std::vector<int> parent;
  /// Per triangle: 1 if it was created by the last refinement step.
  std::vector<std::uint8_t> is_new;
  std::vector<std::uint8_t> initial_vertex;
  /// Endpoints of the edge whose bisection created a vertex; {-1,-1} for initial vertices.
  std::vector<std::array<int, 2>> vertex_parent_edge;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }

  double signed_area(int t) const;
  double area(int t) const { return signed_area(t); }
  double diameter(int t) const;
  Point centroid(int t) const;

  /// Coarse mesh constructor.  Triangles are reoriented counterclockwise and the
  /// refinement edge is set to the longest edge (ties: smallest opposite vertex index).
  static Triangulation from_coarse(std::vector<Point> vertices,
                                   std::vector<std::array<int, 3>> triangles,
                                   std::vector<BoundaryEdge> boundary);
};

/// Throws GeometryError for non-positive areas and TopologyError for
/// non-conforming connectivity or boundary records that do not match.
void validate(const Triangulation& mesh);

/// Smallest conforming NVB refinement bisecting every marked triangle at least once.
Triangulation refine_nvb(const Triangulation& mesh, const std::vector<int>& marked);
Triangulation refine_uniform(const Triangulation& mesh);

inline std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint32_t>(a < b ? a : b);
  const auto hi = static_cast<std::uint32_t>(a < b ? b : a);
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

struct Edge {
  /// Oriented endpoints: interior edges run from the lower to the higher vertex
  /// index, boundary edges counterclockwise.
  int a = -1;
  int b = -1;
  Point tangent;
  /// Tangent rotated by -90 degrees; outward on the boundary.
  Point normal;
  Point midpoint;
  double length = 0.0;
  /// Triangle for which the normal is outward, and its neighbour (-1 on the boundary).
  int plus = -1;
  int minus = -1;
  bool boundary = false;
  BoundaryLabel label = BoundaryLabel::Free;
};

struct EdgeTopology {
  std::vector<Edge> edges;
  /// Global edge of local edge k = (v_k, v_{k+1}).
  std::vector<std::array<int, 3>> triangle_edges;
  /// Triangles incident to each vertex, in triangle-id order (CSR layout).
  std::vector<int> vertex_triangle_offsets;
  std::vector<int> vertex_triangles;

  int num_edges() const { return static_cast<int>(edges.size()); }
  /// Edge index for an unordered vertex pair, -1 if absent.
  int find_edge(int a, int b) const;

  std::unordered_map<std::uint64_t, int> lookup;
};

EdgeTopology build_topology(const Triangulation& mesh);

enum class FrameKind : std::uint8_t { InteriorInitial, InteriorNew, Boundary };

/// Local coordinate system of a vertex and its constrained vertex dofs.
struct VertexFrame {
  Point xi{1.0, 0.0};
  Point zeta{0.0, 1.0};
  FrameKind kind = FrameKind::InteriorInitial;
  /// Bit j set iff vertex dof j (0-based: value, d_xi, d_zeta, d_xixi, d_xizeta, d_zetazeta) is constrained.
  std::uint8_t constrained = 0;
  /// Labels of the two boundary edges, first the one defining the frame.
  BoundaryLabel label0 = BoundaryLabel::Free;
  BoundaryLabel label1 = BoundaryLabel::Free;
  /// Interior angle of the domain at a boundary vertex.
  double angle = 0.0;
  bool straight = false;
  std::array<int, 2> parent_edge{-1, -1};
};

std::vector<VertexFrame> assign_vertex_frames(const Triangulation& mesh, const EdgeTopology& topo);

void write_mesh(std::ostream& out, const Triangulation& mesh);
Triangulation read_mesh(std::istream& in);
void save_mesh(const std::string& path, const Triangulation& mesh);
Triangulation load_mesh(const std::string& path);

}  // namespace argyris

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "argyris/element.hpp"
#include "argyris/jet.hpp"
#include "argyris/mesh.hpp"

namespace argyris {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

enum class SpaceMode : std::uint8_t { Standard, Extended };

enum class DofKind : std::uint8_t {
  Value,
  DXi,
  DZeta,
  DXiXi,
  DXiZeta,
  DZetaZeta,
  DZetaZetaPlus,
  DZetaZetaMinus,
  EdgeNormal
};

struct DofInfo {
  /// Vertex index, or edge index for EdgeNormal.
  int node = -1;
  DofKind kind = DofKind::Value;
};

/// Global enumeration: vertex dofs by vertex index, then edge-midpoint dofs by edge index.
struct DofMap {
  SpaceMode mode = SpaceMode::Extended;
  std::vector<int> vertex_first;  // size nv+1
  int edge_first = 0;
  std::vector<DofInfo> info;
  std::vector<std::array<int, kLocalDofs>> local_to_global;
  std::vector<std::uint8_t> constrained;
  /// Global dof -> position among free dofs (-1 if constrained), and its inverse.
  std::vector<int> free_index;
  std::vector<int> free_dofs;

  int num_dofs() const { return static_cast<int>(info.size()); }
  int num_free() const { return static_cast<int>(free_dofs.size()); }
  int vertex_dofs(int v) const { return vertex_first[v + 1] - vertex_first[v]; }
  bool is_split(int v) const { return vertex_dofs(v) == 7; }
  int edge_dof(int e) const { return edge_first + e; }
};

DofMap build_dof_map(const Triangulation& mesh, const EdgeTopology& topo,
                     const std::vector<VertexFrame>& frames, SpaceMode mode);

/// Mesh, topology, frames and dofs of one discrete space.
struct Discretization {
  Triangulation mesh;
  EdgeTopology topology;
  std::vector<VertexFrame> frames;
  DofMap dofs;

  LocalFrames local_frames(int t) const;
  template <class S = double>
  ElementGeometry<S> geometry(int t) const {
    const auto& tri = mesh.triangles[t];
    return make_geometry<S>(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
  }
  template <class S = double>
  LocalMatrix<S> transform(int t) const {
    return physical_transform<S>(geometry<S>(t), local_frames(t));
  }
};

using SpacePtr = std::shared_ptr<const Discretization>;

SpacePtr discretize(Triangulation mesh, SpaceMode mode);

/// Coefficient vector over all dofs (constrained ones included) of a space.
struct FeFunction {
  SpacePtr space;
  Vector coefficients;

  FeFunction() = default;
  FeFunction(SpacePtr s, Vector c) : space(std::move(s)), coefficients(std::move(c)) {}
  explicit FeFunction(SpacePtr s);

  template <class S = double>
  LocalVector<S> local(int t) const {
    LocalVector<S> c;
    const auto& l2g = space->dofs.local_to_global[t];
    for (int i = 0; i < kLocalDofs; ++i) c(i) = static_cast<S>(coefficients(l2g[i]));
    return c;
  }
  template <class S = double>
  ElementPolynomial<S> on_triangle(int t) const {
    return make_element_polynomial<S>(space->geometry<S>(t), space->transform<S>(t), local<S>(t));
  }
};

/// Physical partials (orders 0..4) at reference points of a triangle.
std::vector<Partials<double>> evaluate(const FeFunction& f, int t, const std::vector<Eigen::Vector2d>& reference_points);

/// Coefficient of dof L equals L(g); split dofs both take d_zetazeta g.
FeFunction nodal_interpolate(const BoundaryDatum& g, SpacePtr space);

/// Columns hold the fine dof values of coarse basis functions (all dofs).
/// Requires Extended mode and fine.mesh a one-step NVB refinement of coarse.mesh.
SparseMatrix prolongation_matrix(const Discretization& coarse, const Discretization& fine);

/// Same construction without the Extended-mode guard; for split-free spaces every
/// fine dof is read from a single coarse triangle, which is not a valid injection
/// when the coarse function's Hessian jumps at a new vertex.
SparseMatrix one_sided_prolongation(const Discretization& coarse, const Discretization& fine);

Vector prolong_coefficients(const FeFunction& coarse, const Discretization& fine);

}  // namespace argyris

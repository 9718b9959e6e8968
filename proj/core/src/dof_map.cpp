#include "argyris/dof_map.hpp"

namespace argyris {

DofMap build_dof_map(const Triangulation& mesh, const EdgeTopology& topo,
                     const std::vector<VertexFrame>& frames, SpaceMode mode) {
  DofMap map;
  map.mode = mode;
  const int nv = mesh.num_vertices();
  const int ne = topo.num_edges();
  map.vertex_first.assign(nv + 1, 0);
  for (int v = 0; v < nv; ++v) {
    const bool split = mode == SpaceMode::Extended && frames[v].kind == FrameKind::InteriorNew;
    map.vertex_first[v + 1] = map.vertex_first[v] + (split ? 7 : 6);
  }
  map.edge_first = map.vertex_first[nv];
  const int n = map.edge_first + ne;
  map.info.resize(n);
  map.constrained.assign(n, 0);
  static constexpr DofKind kinds[7] = {DofKind::Value, DofKind::DXi, DofKind::DZeta, DofKind::DXiXi,
                                       DofKind::DXiZeta, DofKind::DZetaZeta, DofKind::DZetaZetaPlus};
  for (int v = 0; v < nv; ++v) {
    const int first = map.vertex_first[v];
    const bool split = map.vertex_dofs(v) == 7;
    for (int j = 0; j < map.vertex_dofs(v); ++j) {
      DofKind k = kinds[std::min(j, 5)];
      if (split && j == 5) k = DofKind::DZetaZetaPlus;
      if (split && j == 6) k = DofKind::DZetaZetaMinus;
      map.info[first + j] = {v, k};
      if (j < 6 && (frames[v].constrained >> j & 1u)) map.constrained[first + j] = 1;
    }
  }
  for (int e = 0; e < ne; ++e) {
    map.info[map.edge_first + e] = {e, DofKind::EdgeNormal};
    const Edge& edge = topo.edges[e];
    if (edge.boundary && edge.label == BoundaryLabel::Clamped) map.constrained[map.edge_first + e] = 1;
  }

  map.local_to_global.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Point c = mesh.centroid(t);
    auto& l2g = map.local_to_global[t];
    for (int k = 0; k < 3; ++k) {
      const int v = tri[k];
      const int first = map.vertex_first[v];
      for (int j = 0; j < 6; ++j) l2g[6 * k + j] = first + j;
      if (map.vertex_dofs(v) == 7 && (c - mesh.vertices[v]).dot(frames[v].zeta) <= 0.0) l2g[6 * k + 5] = first + 6;
      l2g[18 + k] = map.edge_first + topo.triangle_edges[t][k];
    }
  }

  map.free_index.assign(n, -1);
  for (int i = 0; i < n; ++i)
    if (!map.constrained[i]) {
      map.free_index[i] = static_cast<int>(map.free_dofs.size());
      map.free_dofs.push_back(i);
    }
  return map;
}

LocalFrames Discretization::local_frames(int t) const {
  LocalFrames f;
  const auto& tri = mesh.triangles[t];
  for (int k = 0; k < 3; ++k) {
    f.xi[k] = frames[tri[k]].xi;
    f.zeta[k] = frames[tri[k]].zeta;
    f.edge_normal[k] = topology.edges[topology.triangle_edges[t][k]].normal;
  }
  return f;
}

SpacePtr discretize(Triangulation mesh, SpaceMode mode) {
  auto d = std::make_shared<Discretization>();
  d->mesh = std::move(mesh);
  d->topology = build_topology(d->mesh);
  d->frames = assign_vertex_frames(d->mesh, d->topology);
  d->dofs = build_dof_map(d->mesh, d->topology, d->frames, mode);
  return d;
}

FeFunction::FeFunction(SpacePtr s) : space(std::move(s)) {
  coefficients = Vector::Zero(space->dofs.num_dofs());
}

std::vector<Partials<double>> evaluate(const FeFunction& f, int t, const std::vector<Eigen::Vector2d>& points) {
  if (!f.space) throw PreconditionError("function without a space");
  if (t < 0 || t >= f.space->mesh.num_triangles()) throw PreconditionError("triangle id " + std::to_string(t) + " out of range");
  const ElementPolynomial<double> poly = f.on_triangle<double>(t);
  std::vector<Partials<double>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(poly.partials(p));
  return out;
}

FeFunction nodal_interpolate(const BoundaryDatum& g, SpacePtr space) {
  const Discretization& d = *space;
  FeFunction f(space);
  const DofMap& map = d.dofs;
  for (int v = 0; v < d.mesh.num_vertices(); ++v) {
    const int first_tri = d.topology.vertex_triangles[d.topology.vertex_triangle_offsets[v]];
    const Jet3 j = g(d.mesh.vertices[v], d.mesh.centroid(first_tri));
    const Point& xi = d.frames[v].xi;
    const Point& zeta = d.frames[v].zeta;
    const double vals[7] = {j[0], j.d1(xi), j.d1(zeta), j.d2(xi, xi), j.d2(xi, zeta), j.d2(zeta, zeta), j.d2(zeta, zeta)};
    for (int k = 0; k < map.vertex_dofs(v); ++k) f.coefficients(map.vertex_first[v] + k) = vals[k];
  }
  for (int e = 0; e < d.topology.num_edges(); ++e) {
    const Edge& edge = d.topology.edges[e];
    const Jet3 j = g(edge.midpoint, d.mesh.centroid(edge.plus));
    f.coefficients(map.edge_dof(e)) = j.d1(edge.normal);
  }
  return f;
}

}  // namespace argyris

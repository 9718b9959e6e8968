#include <cmath>
#include <numbers>

#include "argyris/mesh.hpp"

namespace argyris {

namespace {

int rank(BoundaryLabel l) { return static_cast<int>(l); }

double angle_at(const Triangulation& mesh, int t, int v) {
  const auto& tri = mesh.triangles[t];
  int k = 0;
  while (tri[k] != v) ++k;
  const Point a = mesh.vertices[tri[(k + 1) % 3]] - mesh.vertices[v];
  const Point b = mesh.vertices[tri[(k + 2) % 3]] - mesh.vertices[v];
  return std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
}

constexpr std::uint8_t bits(std::initializer_list<int> js) {
  std::uint8_t m = 0;
  for (int j : js) m |= static_cast<std::uint8_t>(1u << j);
  return m;
}

}  // namespace

std::vector<VertexFrame> assign_vertex_frames(const Triangulation& mesh, const EdgeTopology& topo) {
  const int nv = mesh.num_vertices();
  std::vector<VertexFrame> frames(nv);
  std::vector<int> incoming(nv, -1), outgoing(nv, -1);
  for (int e = 0; e < topo.num_edges(); ++e) {
    const Edge& edge = topo.edges[e];
    if (!edge.boundary) continue;
    if (outgoing[edge.a] != -1 || incoming[edge.b] != -1)
      throw TopologyError("boundary vertex " + std::to_string(outgoing[edge.a] != -1 ? edge.a : edge.b) +
                          " is not a manifold boundary point");
    outgoing[edge.a] = e;
    incoming[edge.b] = e;
  }

  for (int z = 0; z < nv; ++z) {
    VertexFrame& f = frames[z];
    if (incoming[z] == -1 && outgoing[z] == -1) {
      if (mesh.initial_vertex[z]) {
        f.kind = FrameKind::InteriorInitial;
      } else {
        f.kind = FrameKind::InteriorNew;
        auto [p, q] = mesh.vertex_parent_edge[z];
        if (p > q) std::swap(p, q);
        f.parent_edge = {p, q};
        const Point d = mesh.vertices[q] - mesh.vertices[p];
        f.xi = d / d.norm();
        f.zeta = Point(f.xi.y(), -f.xi.x());
      }
      continue;
    }
    if (incoming[z] == -1 || outgoing[z] == -1)
      throw TopologyError("boundary vertex " + std::to_string(z) + " has only one boundary edge");
    f.kind = FrameKind::Boundary;
    if (!mesh.initial_vertex[z]) f.parent_edge = mesh.vertex_parent_edge[z];
    double omega = 0.0;
    for (int i = topo.vertex_triangle_offsets[z]; i < topo.vertex_triangle_offsets[z + 1]; ++i)
      omega += angle_at(mesh, topo.vertex_triangles[i], z);
    f.angle = omega;
    f.straight = std::abs(omega - std::numbers::pi) < 1e-12;

    const Edge* e0 = &topo.edges[incoming[z]];
    const Edge* e1 = &topo.edges[outgoing[z]];
    if (rank(e1->label) < rank(e0->label)) std::swap(e0, e1);
    f.label0 = e0->label;
    f.label1 = e1->label;
    const Point tau0 = e0->tangent, nu0 = e0->normal, tau1 = e1->tangent;
    using L = BoundaryLabel;
    f.xi = tau0;
    f.zeta = nu0;
    if (f.label0 == L::Clamped) {
      if (f.label1 == L::Free || f.straight)
        f.constrained = bits({0, 1, 2, 3, 4});
      else
        f.constrained = bits({0, 1, 2, 3, 4, 5});
    } else if (f.label0 == L::SimplySupported) {
      if (f.label1 == L::SimplySupported && !f.straight) {
        f.zeta = tau1;
        f.constrained = bits({0, 1, 2, 3, 5});
      } else {
        f.constrained = bits({0, 1, 3});
      }
    } else {
      f.xi = Point(1.0, 0.0);
      f.zeta = Point(0.0, 1.0);
      f.constrained = 0;
    }
  }
  return frames;
}

}  // namespace argyris

#include "argyris/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace argyris {

const char* to_string(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::Clamped: return "Clamped";
    case BoundaryLabel::SimplySupported: return "SimplySupported";
    case BoundaryLabel::Free: return "Free";
  }
  return "?";
}

BoundaryLabel parse_boundary_label(const std::string& text) {
  if (text == "Clamped" || text == "C") return BoundaryLabel::Clamped;
  if (text == "SimplySupported" || text == "S") return BoundaryLabel::SimplySupported;
  if (text == "Free" || text == "F") return BoundaryLabel::Free;
  throw TopologyError("unknown boundary label '" + text + "'");
}

double Triangulation::signed_area(int t) const {
  const auto& tri = triangles[t];
  const Point e1 = vertices[tri[1]] - vertices[tri[0]];
  const Point e2 = vertices[tri[2]] - vertices[tri[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double Triangulation::diameter(int t) const {
  const auto& tri = triangles[t];
  double d = 0.0;
  for (int k = 0; k < 3; ++k)
    d = std::max(d, (vertices[tri[(k + 1) % 3]] - vertices[tri[k]]).norm());
  return d;
}

Point Triangulation::centroid(int t) const {
  const auto& tri = triangles[t];
  return (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
}

namespace {

double orient(const std::vector<Point>& v, const std::array<int, 3>& t) {
  const Point e1 = v[t[1]] - v[t[0]];
  const Point e2 = v[t[2]] - v[t[0]];
  return e1.x() * e2.y() - e1.y() * e2.x();
}

// Flips boundary records whose direction disagrees with the counterclockwise
// traversal of their triangle.
void orient_boundary(Triangulation& mesh) {
  std::unordered_map<std::uint64_t, std::pair<int, int>> directed;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) directed.emplace(edge_key(tri[k], tri[(k + 1) % 3]),
                                                 std::make_pair(tri[k], tri[(k + 1) % 3]));
  for (auto& be : mesh.boundary_edges) {
    auto it = directed.find(edge_key(be.a, be.b));
    if (it == directed.end()) {
      std::ostringstream msg;
      msg << "boundary edge (" << be.a << "," << be.b << ") is not an edge of the mesh";
      throw TopologyError(msg.str());
    }
    be.a = it->second.first;
    be.b = it->second.second;
  }
}

void init_genealogy(Triangulation& mesh) {
  mesh.level = 0;
  mesh.parent.clear();
  mesh.is_new.assign(mesh.triangles.size(), 0);
  mesh.initial_vertex.assign(mesh.vertices.size(), 1);
  mesh.vertex_parent_edge.assign(mesh.vertices.size(), {-1, -1});
}

}  // namespace

Triangulation Triangulation::from_coarse(std::vector<Point> vertices,
                                         std::vector<std::array<int, 3>> triangles,
                                         std::vector<BoundaryEdge> boundary) {
  Triangulation mesh;
  mesh.vertices = std::move(vertices);
  mesh.boundary_edges = std::move(boundary);
  const int nv = static_cast<int>(mesh.vertices.size());
  for (auto tri : triangles) {
    for (int v : tri)
      if (v < 0 || v >= nv) throw TopologyError("triangle references vertex " + std::to_string(v));
    if (orient(mesh.vertices, tri) < 0.0) std::swap(tri[0], tri[1]);
    int best = 0;
    double best_len = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double len = (mesh.vertices[tri[(k + 1) % 3]] - mesh.vertices[tri[k]]).squaredNorm();
      const double tol = 1e-12 * std::max(len, best_len);
      if (len > best_len + tol ||
          (std::abs(len - best_len) <= tol && tri[(k + 2) % 3] < tri[(best + 2) % 3])) {
        best = k;
        best_len = len;
      }
    }
    mesh.triangles.push_back({tri[best], tri[(best + 1) % 3], tri[(best + 2) % 3]});
  }
  init_genealogy(mesh);
  orient_boundary(mesh);
  validate(mesh);
  return mesh;
}

void validate(const Triangulation& mesh) {
  const int nv = mesh.num_vertices();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangles[t])
      if (v < 0 || v >= nv) throw TopologyError("triangle " + std::to_string(t) + " has invalid vertex");
    if (!(mesh.signed_area(t) > 0.0))
      throw GeometryError("triangle " + std::to_string(t) + " has non-positive area");
  }
  (void)build_topology(mesh);
}

int EdgeTopology::find_edge(int a, int b) const {
  auto it = lookup.find(edge_key(a, b));
  return it == lookup.end() ? -1 : it->second;
}

EdgeTopology build_topology(const Triangulation& mesh) {
  EdgeTopology topo;
  const int nt = mesh.num_triangles();
  topo.triangle_edges.resize(nt);
  topo.lookup.reserve(static_cast<std::size_t>(nt) * 2);
  topo.edges.reserve(static_cast<std::size_t>(nt) * 3 / 2 + 8);
  auto describe = [](int a, int b) {
    std::ostringstream msg;
    msg << "edge (" << a << "," << b << ")";
    return msg.str();
  };
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      auto [it, inserted] = topo.lookup.emplace(edge_key(a, b), topo.num_edges());
      if (inserted) {
        Edge e;
        e.a = a;
        e.b = b;
        e.plus = t;
        topo.edges.push_back(e);
      } else {
        Edge& e = topo.edges[it->second];
        if (e.minus != -1) throw TopologyError(describe(a, b) + " is shared by more than two triangles");
        if (e.a != b || e.b != a)
          throw TopologyError(describe(a, b) + " is traversed twice in the same direction");
        e.minus = t;
      }
      topo.triangle_edges[t][k] = it->second;
    }
  }
  std::vector<std::uint8_t> seen(topo.edges.size(), 0);
  for (const auto& be : mesh.boundary_edges) {
    const int id = topo.find_edge(be.a, be.b);
    if (id < 0) throw TopologyError("boundary " + describe(be.a, be.b) + " is not a mesh edge");
    Edge& e = topo.edges[id];
    if (e.minus != -1) throw TopologyError("boundary " + describe(be.a, be.b) + " is interior");
    if (seen[id]) throw TopologyError("boundary " + describe(be.a, be.b) + " listed twice");
    seen[id] = 1;
    e.boundary = true;
    e.label = be.label;
  }
  for (int id = 0; id < topo.num_edges(); ++id) {
    Edge& e = topo.edges[id];
    if (e.minus == -1 && !e.boundary)
      throw TopologyError(describe(e.a, e.b) + " has one neighbour but no boundary label (hanging node?)");
    if (!e.boundary) {
      // Interior orientation from the lower to the higher vertex index; the
      // triangle traversing the edge in that direction is T+.
      if (e.a > e.b) {
        std::swap(e.a, e.b);
        std::swap(e.plus, e.minus);
      }
    }
    const Point d = mesh.vertices[e.b] - mesh.vertices[e.a];
    e.length = d.norm();
    e.tangent = d / e.length;
    e.normal = Point(e.tangent.y(), -e.tangent.x());
    e.midpoint = 0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]);
  }
  const int nv = mesh.num_vertices();
  topo.vertex_triangle_offsets.assign(nv + 1, 0);
  for (const auto& tri : mesh.triangles)
    for (int v : tri) ++topo.vertex_triangle_offsets[v + 1];
  for (int v = 0; v < nv; ++v) topo.vertex_triangle_offsets[v + 1] += topo.vertex_triangle_offsets[v];
  topo.vertex_triangles.resize(topo.vertex_triangle_offsets[nv]);
  std::vector<int> fill(topo.vertex_triangle_offsets.begin(), topo.vertex_triangle_offsets.end() - 1);
  for (int t = 0; t < nt; ++t)
    for (int v : mesh.triangles[t]) topo.vertex_triangles[fill[v]++] = t;
  return topo;
}

Triangulation refine_nvb(const Triangulation& mesh, const std::vector<int>& marked) {
  const int nt = mesh.num_triangles();
  for (int t : marked)
    if (t < 0 || t >= nt) throw PreconditionError("marked triangle " + std::to_string(t) + " out of range");
  if (marked.empty()) {
    Triangulation same = mesh;
    same.level = mesh.level + 1;
    same.parent.resize(nt);
    for (int t = 0; t < nt; ++t) same.parent[t] = t;
    same.is_new.assign(nt, 0);
    return same;
  }

  // Edge -> incident triangles.
  std::unordered_map<std::uint64_t, std::array<int, 2>> adjacency;
  adjacency.reserve(static_cast<std::size_t>(nt) * 2);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      auto [it, inserted] = adjacency.emplace(edge_key(tri[k], tri[(k + 1) % 3]), std::array<int, 2>{t, -1});
      if (!inserted) it->second[1] = t;
    }
  }

  // Closure: a triangle with any marked edge must have its refinement edge marked.
  std::unordered_map<std::uint64_t, int> midpoint;
  std::deque<std::uint64_t> queue;
  auto mark = [&](std::uint64_t key) {
    if (midpoint.emplace(key, -1).second) queue.push_back(key);
  };
  for (int t : marked) mark(edge_key(mesh.triangles[t][0], mesh.triangles[t][1]));
  while (!queue.empty()) {
    const std::uint64_t key = queue.front();
    queue.pop_front();
    for (int t : adjacency.at(key)) {
      if (t < 0) continue;
      mark(edge_key(mesh.triangles[t][0], mesh.triangles[t][1]));
    }
  }

  Triangulation fine;
  fine.vertices = mesh.vertices;
  fine.initial_vertex = mesh.initial_vertex;
  fine.vertex_parent_edge = mesh.vertex_parent_edge;
  fine.level = mesh.level + 1;
  fine.triangles.reserve(static_cast<std::size_t>(nt) + 2 * midpoint.size());
  fine.parent.reserve(fine.triangles.capacity());
  fine.is_new.reserve(fine.triangles.capacity());

  auto get_mid = [&](int a, int b) {
    int& m = midpoint.at(edge_key(a, b));
    if (m < 0) {
      m = static_cast<int>(fine.vertices.size());
      fine.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
      fine.initial_vertex.push_back(0);
      fine.vertex_parent_edge.push_back({a, b});
    }
    return m;
  };
  auto is_marked = [&](int a, int b) { return midpoint.count(edge_key(a, b)) != 0; };

  struct Item {
    std::array<int, 3> tri;
  };
  std::vector<Item> stack;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    if (!is_marked(tri[0], tri[1])) {
      fine.triangles.push_back(tri);
      fine.parent.push_back(t);
      fine.is_new.push_back(0);
      continue;
    }
    // Depth-first bisection; children (c,a,m) before (b,c,m).
    stack.clear();
    stack.push_back({tri});
    while (!stack.empty()) {
      const auto cur = stack.back().tri;
      stack.pop_back();
      const int a = cur[0], b = cur[1], c = cur[2];
      if (!is_marked(a, b)) {
        fine.triangles.push_back(cur);
        fine.parent.push_back(t);
        fine.is_new.push_back(1);
        continue;
      }
      const int m = get_mid(a, b);
      stack.push_back({{b, c, m}});
      stack.push_back({{c, a, m}});
    }
  }

  fine.boundary_edges.reserve(mesh.boundary_edges.size() * 2);
  for (const auto& be : mesh.boundary_edges) {
    auto it = midpoint.find(edge_key(be.a, be.b));
    if (it == midpoint.end()) {
      fine.boundary_edges.push_back(be);
    } else {
      fine.boundary_edges.push_back({be.a, it->second, be.label});
      fine.boundary_edges.push_back({it->second, be.b, be.label});
    }
  }
  return fine;
}

Triangulation refine_uniform(const Triangulation& mesh) {
  std::vector<int> all(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
  return refine_nvb(mesh, all);
}

}  // namespace argyris

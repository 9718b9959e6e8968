#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "argyris/mesh.hpp"

namespace argyris {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_mesh(std::ostream& out, const Triangulation& mesh) {
  for (const Point& p : mesh.vertices) out << "v " << fmt17(p.x()) << ' ' << fmt17(p.y()) << '\n';
  for (const auto& t : mesh.triangles) out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << " 0\n";
  for (const auto& b : mesh.boundary_edges) out << "b " << b.a << ' ' << b.b << ' ' << to_string(b.label) << '\n';
}

Triangulation read_mesh(std::istream& in) {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    bool ok = true;
    if (tag == "v") {
      double x, y;
      ok = static_cast<bool>(ls >> x >> y);
      if (ok) vertices.emplace_back(x, y);
    } else if (tag == "t") {
      int i, j, k, r;
      ok = static_cast<bool>(ls >> i >> j >> k >> r) && r >= 0 && r < 3;
      if (ok) {
        const std::array<int, 3> raw{i, j, k};
        triangles.push_back({raw[r], raw[(r + 1) % 3], raw[(r + 2) % 3]});
      }
    } else if (tag == "b") {
      int i, j;
      std::string label;
      ok = static_cast<bool>(ls >> i >> j >> label);
      if (ok) boundary.push_back({i, j, parse_boundary_label(label)});
    } else {
      ok = false;
    }
    if (!ok) throw TopologyError("malformed mesh line " + std::to_string(lineno) + ": " + line);
  }

  Triangulation mesh;
  mesh.vertices = std::move(vertices);
  const int nv = mesh.num_vertices();
  for (auto tri : triangles) {
    for (int v : tri)
      if (v < 0 || v >= nv) throw TopologyError("triangle references vertex " + std::to_string(v));
    const Point e1 = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Point e2 = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    // Clockwise input keeps its refinement edge: (a,b,c) -> (b,a,c).
    if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0) std::swap(tri[0], tri[1]);
    mesh.triangles.push_back(tri);
  }
  mesh.boundary_edges = std::move(boundary);
  mesh.is_new.assign(mesh.triangles.size(), 0);
  mesh.initial_vertex.assign(mesh.vertices.size(), 1);
  mesh.vertex_parent_edge.assign(mesh.vertices.size(), {-1, -1});
  // Boundary records are re-oriented by their triangle.
  std::unordered_map<std::uint64_t, std::pair<int, int>> directed;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) directed.emplace(edge_key(tri[k], tri[(k + 1) % 3]), std::make_pair(tri[k], tri[(k + 1) % 3]));
  for (auto& be : mesh.boundary_edges) {
    auto it = directed.find(edge_key(be.a, be.b));
    if (it == directed.end())
      throw TopologyError("boundary edge (" + std::to_string(be.a) + "," + std::to_string(be.b) + ") is not a mesh edge");
    be.a = it->second.first;
    be.b = it->second.second;
  }
  validate(mesh);
  return mesh;
}

void save_mesh(const std::string& path, const Triangulation& mesh) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot open " + path + " for writing");
  write_mesh(out, mesh);
}

Triangulation load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  return read_mesh(in);
}

}  // namespace argyris

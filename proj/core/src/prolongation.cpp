#include <algorithm>
#include <cmath>

#include "argyris/dof_map.hpp"

namespace argyris {

namespace {

bool same_mesh(const Triangulation& a, const Triangulation& b) {
  return a.vertices.size() == b.vertices.size() && a.triangles == b.triangles;
}

// Physical partials (rows) of the 21 physical basis functions (columns) of a triangle at x.
PartialTable<double> basis_partials_at(const Discretization& d, int t, const Point& x) {
  const ElementGeometry<double> g = d.geometry(t);
  const LocalMatrix<double> M = d.transform(t);
  const Eigen::Vector2d xh = g.to_reference(x);
  PartialTable<double> P;
  monomial_partials<double>(xh.x(), xh.y(), P);
  const PartialTable<double> phys = partial_transform<double>(g.Jinv) * (P * ReferenceElement::instance().coeff);
  return phys * M.transpose();
}

double vertex_functional(int j, const Eigen::Matrix<double, kPartials, 1>& d, const Point& xi, const Point& zeta) {
  auto d1 = [&](const Point& u) { return d(1) * u.x() + d(2) * u.y(); };
  auto d2 = [&](const Point& u, const Point& v) {
    return d(3) * u.x() * v.x() + d(4) * (u.x() * v.y() + u.y() * v.x()) + d(5) * u.y() * v.y();
  };
  switch (j) {
    case 0: return d(0);
    case 1: return d1(xi);
    case 2: return d1(zeta);
    case 3: return d2(xi, xi);
    case 4: return d2(xi, zeta);
    default: return d2(zeta, zeta);
  }
}

SparseMatrix build(const Discretization& coarse, const Discretization& fine) {
  const DofMap& cm = coarse.dofs;
  const DofMap& fm = fine.dofs;
  const int nf = fm.num_dofs(), nc = cm.num_dofs();
  SparseMatrix P(nf, nc);
  if (same_mesh(coarse.mesh, fine.mesh)) {
    if (nf != nc) throw PreconditionError("identical meshes with different dof maps");
    P.setIdentity();
    return P;
  }
  const int nt_f = fine.mesh.num_triangles(), nt_c = coarse.mesh.num_triangles();
  if (fine.mesh.level != coarse.mesh.level + 1 || static_cast<int>(fine.mesh.parent.size()) != nt_f)
    throw PreconditionError("prolongation requires consecutive refinement levels");
  for (int p : fine.mesh.parent)
    if (p < 0 || p >= nt_c) throw PreconditionError("parent map does not refer to the coarse mesh");
  const int nv_c = coarse.mesh.num_vertices();

  std::vector<std::vector<std::pair<int, double>>> rows(nf);
  std::vector<std::uint8_t> done(nf, 0);
  for (int v = 0; v < nv_c; ++v) {
    if (fm.vertex_dofs(v) != cm.vertex_dofs(v)) throw PreconditionError("vertex dof layout changed between levels");
    for (int j = 0; j < fm.vertex_dofs(v); ++j) {
      rows[fm.vertex_first[v] + j].push_back({cm.vertex_first[v] + j, 1.0});
      done[fm.vertex_first[v] + j] = 1;
    }
  }
  for (int e = 0; e < fine.topology.num_edges(); ++e) {
    const Edge& edge = fine.topology.edges[e];
    const int ce = coarse.topology.find_edge(edge.a, edge.b);
    if (ce < 0) continue;
    rows[fm.edge_dof(e)].push_back({cm.edge_dof(ce), 1.0});
    done[fm.edge_dof(e)] = 1;
  }

  auto store = [&](int row, int parent, const Eigen::Matrix<double, 1, kLocalDofs>& vals) {
    // Columns differ in scale by powers of h, so no relative drop tolerance.
    for (int i = 0; i < kLocalDofs; ++i)
      if (vals(i) != 0.0) rows[row].push_back({cm.local_to_global[parent][i], vals(i)});
    std::sort(rows[row].begin(), rows[row].end());
    done[row] = 1;
  };

  for (int t = 0; t < nt_f; ++t) {
    if (!fine.mesh.is_new[t]) continue;
    const int parent = fine.mesh.parent[t];
    const auto& tri = fine.mesh.triangles[t];
    const auto& l2g = fm.local_to_global[t];
    for (int k = 0; k < 3; ++k) {
      const int v = tri[k];
      bool pending = false;
      for (int j = 0; j < 6 && v >= nv_c; ++j) pending = pending || !done[l2g[6 * k + j]];
      if (pending) {
        const PartialTable<double> B = basis_partials_at(coarse, parent, fine.mesh.vertices[v]);
        const VertexFrame& f = fine.frames[v];
        for (int j = 0; j < 6; ++j) {
          const int row = l2g[6 * k + j];
          if (done[row]) continue;
          Eigen::Matrix<double, 1, kLocalDofs> vals;
          for (int i = 0; i < kLocalDofs; ++i) vals(i) = vertex_functional(j, B.col(i), f.xi, f.zeta);
          store(row, parent, vals);
        }
      }
      const int e = fine.topology.triangle_edges[t][k];
      const int row = l2g[18 + k];
      if (!done[row]) {
        const Edge& edge = fine.topology.edges[e];
        const PartialTable<double> B = basis_partials_at(coarse, parent, edge.midpoint);
        const Eigen::Matrix<double, 1, kLocalDofs> vals = edge.normal.x() * B.row(1) + edge.normal.y() * B.row(2);
        store(row, parent, vals);
      }
    }
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (int r = 0; r < nf; ++r) {
    if (!done[r]) throw PreconditionError("fine dof " + std::to_string(r) + " not reached by any refined triangle");
    for (auto [c, v] : rows[r]) trip.emplace_back(r, c, v);
  }
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

}  // namespace

SparseMatrix prolongation_matrix(const Discretization& coarse, const Discretization& fine) {
  if (coarse.dofs.mode != SpaceMode::Extended || fine.dofs.mode != SpaceMode::Extended)
    throw ConfigurationError("no natural injection between standard Argyris spaces; use Extended mode");
  return build(coarse, fine);
}

SparseMatrix one_sided_prolongation(const Discretization& coarse, const Discretization& fine) {
  return build(coarse, fine);
}

Vector prolong_coefficients(const FeFunction& coarse, const Discretization& fine) {
  return prolongation_matrix(*coarse.space, fine) * coarse.coefficients;
}

}  // namespace argyris

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "argyris/benchmarks.hpp"
#include "argyris/mesh.hpp"
#include "fixtures.hpp"

using namespace argyris;
using namespace argyris::testing;

namespace {

using L = BoundaryLabel;

// Number of holes is zero for every test domain (the slit is cut open).
void expect_euler(const Triangulation& m) {
  const EdgeTopology topo = build_topology(m);
  EXPECT_EQ(m.num_vertices() - topo.num_edges() + m.num_triangles(), 1);
  int boundary = 0;
  for (const Edge& e : topo.edges) boundary += e.boundary;
  EXPECT_EQ(boundary, static_cast<int>(m.boundary_edges.size()));
  EXPECT_EQ(3 * m.num_triangles(), 2 * topo.num_edges() - boundary);
}

double total_area(const Triangulation& m) {
  double a = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) a += m.area(t);
  return a;
}

double angle(const Point& p, const Point& q, const Point& r) {
  const Point u = q - p, v = r - p;
  return std::acos(std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0));
}

// Coarse edges (as vertex pairs) whose midpoint is a vertex of the fine mesh.
std::set<std::pair<int, int>> bisected_edges(const Triangulation& coarse, const Triangulation& fine) {
  std::set<std::pair<int, int>> out;
  for (int v = coarse.num_vertices(); v < fine.num_vertices(); ++v) {
    auto [a, b] = fine.vertex_parent_edge[v];
    if (a < coarse.num_vertices() && b < coarse.num_vertices()) out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

std::pair<int, int> sorted(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

TEST(Topology, EulerCountsOnBenchmarkDomains) {
  for (auto id : {BenchmarkId::B1, BenchmarkId::B2, BenchmarkId::B3, BenchmarkId::B4}) {
    const Triangulation m = make_benchmark(id).mesh;
    validate(m);
    expect_euler(m);
    expect_euler(refine_times(m, 3));
  }
}

TEST(Topology, PlusSideCarriesOutwardNormal) {
  const Triangulation m = refine_times(labelled_square(L::Clamped, L::Free, L::SimplySupported, L::Clamped), 2);
  const EdgeTopology topo = build_topology(m);
  for (const Edge& e : topo.edges) {
    EXPECT_NEAR(e.tangent.norm(), 1.0, 1e-15);
    EXPECT_NEAR(e.normal.dot(e.tangent), 0.0, 1e-15);
    // The centroid of the plus triangle lies on the side opposite to the normal.
    EXPECT_LT((m.centroid(e.plus) - e.midpoint).dot(e.normal), 0.0);
    if (e.minus >= 0) {
      EXPECT_GT((m.centroid(e.minus) - e.midpoint).dot(e.normal), 0.0);
      EXPECT_LT(e.a, e.b);
    }
  }
}

TEST(Topology, SlitFacesAreDistinctBoundaryEdges) {
  const Triangulation m = make_benchmark(BenchmarkId::B3).mesh;
  const EdgeTopology topo = build_topology(m);
  int slit = 0;
  for (const Edge& e : topo.edges)
    if (e.boundary && std::abs(e.midpoint.x()) < 1e-14 && e.midpoint.y() > 0) ++slit;
  EXPECT_EQ(slit, 2);
}

TEST(Validate, RejectsDegenerateAndNonconformingInput) {
  EXPECT_THROW(validate(single_triangle({0, 0}, {1, 0}, {2, 0})), Error);
  // Hanging node: (0.5, 0) splits the bottom of the upper triangle only.
  std::vector<Point> v{{0, 0}, {1, 0}, {0.5, 0}, {0.5, 1}, {0.5, -1}};
  std::vector<std::array<int, 3>> t{{0, 1, 3}, {0, 4, 2}, {2, 4, 1}};
  std::vector<BoundaryEdge> b{{1, 3, L::Clamped}, {3, 0, L::Clamped}, {0, 4, L::Clamped}, {4, 1, L::Clamped}};
  EXPECT_THROW(validate(Triangulation::from_coarse(v, t, b)), TopologyError);
}

TEST(Nvb, NoMarksIsIdentity) {
  const Triangulation m = labelled_square(L::Clamped, L::Clamped, L::Clamped, L::Clamped);
  const Triangulation f = refine_nvb(m, {});
  EXPECT_EQ(f.triangles, m.triangles);
  EXPECT_EQ(f.vertices.size(), m.vertices.size());
}

TEST(Nvb, TwoTriangleSquareBisectsCommonDiagonal) {
  const Triangulation m = two_triangle_square();
  const Triangulation f = refine_nvb(m, {0});
  EXPECT_EQ(f.num_triangles(), 4);
  EXPECT_EQ(f.num_vertices(), 5);
  EXPECT_TRUE((f.vertices[4] - Point(0.5, 0.5)).norm() < 1e-15);
  for (int t = 0; t < 4; ++t) {
    EXPECT_EQ(f.triangles[t][2], 4) << "newest vertex";
    EXPECT_TRUE(f.is_new[t]);
  }
  validate(f);
}

TEST(Nvb, ChildrenFollowTheBisectionRule) {
  // (v0, v1, v2) -> (v2, v0, m) and (v1, v2, m).
  const Triangulation m = single_triangle({0, 0}, {1, 0}, {0.5, 0.8});
  const Triangulation f = refine_nvb(m, {0});
  const auto& p = m.triangles[0];
  ASSERT_EQ(f.num_triangles(), 2);
  const int mid = f.num_vertices() - 1;
  EXPECT_TRUE((f.vertices[mid] - 0.5 * (m.vertices[p[0]] + m.vertices[p[1]])).norm() < 1e-15);
  EXPECT_EQ(f.triangles[0], (std::array<int, 3>{p[2], p[0], mid}));
  EXPECT_EQ(f.triangles[1], (std::array<int, 3>{p[1], p[2], mid}));
  EXPECT_EQ(f.parent, (std::vector<int>{0, 0}));
}

TEST(Nvb, RandomRefinementsStayConformingAndAreaPreserving) {
  std::mt19937 rng(7);
  for (auto id : {BenchmarkId::B1, BenchmarkId::B2, BenchmarkId::B3, BenchmarkId::B4}) {
    Triangulation m = make_benchmark(id).mesh;
    const double area = total_area(m);
    for (int step = 0; step < 6; ++step) {
      std::vector<int> marked;
      std::bernoulli_distribution pick(0.25);
      for (int t = 0; t < m.num_triangles(); ++t)
        if (pick(rng)) marked.push_back(t);
      const Triangulation f = refine_nvb(m, marked);
      validate(f);
      expect_euler(f);
      EXPECT_NEAR(total_area(f), area, 1e-12);
      // Every marked triangle is gone; every other triangle is kept or split.
      std::vector<double> child_area(m.num_triangles(), 0.0);
      std::vector<int> children(m.num_triangles(), 0);
      for (int t = 0; t < f.num_triangles(); ++t) {
        child_area[f.parent[t]] += f.area(t);
        ++children[f.parent[t]];
        EXPECT_EQ(f.is_new[t] != 0, children[f.parent[t]] > 1 || f.triangles[t] != m.triangles[f.parent[t]]);
      }
      for (int t : marked) EXPECT_GE(children[t], 2);
      for (int t = 0; t < m.num_triangles(); ++t) {
        EXPECT_NEAR(child_area[t], m.area(t), 1e-14);
        EXPECT_TRUE(children[t] == 1 || children[t] == 2 || children[t] == 3 || children[t] == 4);
      }
      m = f;
    }
  }
}

TEST(Nvb, RightIsoscelesDescendantsStaySimilar) {
  std::mt19937 rng(3);
  const Triangulation m = refine_randomly(two_triangle_square(), 8, rng, 0.3);
  const double pi = std::numbers::pi;
  for (const auto& t : m.triangles) {
    std::array<double, 3> a{angle(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]),
                            angle(m.vertices[t[1]], m.vertices[t[2]], m.vertices[t[0]]),
                            angle(m.vertices[t[2]], m.vertices[t[0]], m.vertices[t[1]])};
    std::sort(a.begin(), a.end());
    EXPECT_NEAR(a[0], pi / 4, 1e-12);
    EXPECT_NEAR(a[1], pi / 4, 1e-12);
    EXPECT_NEAR(a[2], pi / 2, 1e-12);
    // The refinement edge is the hypotenuse.
    EXPECT_NEAR(angle(m.vertices[t[2]], m.vertices[t[0]], m.vertices[t[1]]), pi / 2, 1e-12);
  }
}

// The bisected coarse edges must be the least set that contains the refinement
// edges of marked triangles and, for every triangle with a bisected edge, its
// refinement edge.  Checked against exhaustive enumeration of edge subsets.
TEST(Nvb, ClosureMatchesExhaustiveMinimum) {
  std::mt19937 rng(11);
  std::vector<Triangulation> meshes{two_triangle_square(), labelled_square(L::Clamped, L::Free, L::Clamped, L::Free),
                                    refine_nvb(two_triangle_square(), {0}),
                                    refine_uniform(labelled_square(L::Clamped, L::Clamped, L::Clamped, L::Clamped))};
  for (const Triangulation& m : meshes) {
    const EdgeTopology topo = build_topology(m);
    const int ne = topo.num_edges();
    ASSERT_LE(ne, 16);
    auto ref_edge = [&](int t) { return topo.find_edge(m.triangles[t][0], m.triangles[t][1]); };
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<int> marked;
      for (int t = 0; t < m.num_triangles(); ++t)
        if (std::bernoulli_distribution(0.3)(rng)) marked.push_back(t);
      if (marked.empty()) marked.push_back(trial % m.num_triangles());
      int best = -1, best_size = ne + 1, count_best = 0;
      for (int mask = 0; mask < (1 << ne); ++mask) {
        bool ok = true;
        for (int t : marked) ok = ok && ((mask >> ref_edge(t)) & 1);
        for (int t = 0; ok && t < m.num_triangles(); ++t) {
          bool touched = false;
          for (int k = 0; k < 3; ++k) touched = touched || ((mask >> topo.triangle_edges[t][k]) & 1);
          if (touched && !((mask >> ref_edge(t)) & 1)) ok = false;
        }
        if (!ok) continue;
        const int size = __builtin_popcount(mask);
        if (size < best_size) {
          best_size = size;
          best = mask;
          count_best = 1;
        } else if (size == best_size) {
          ++count_best;
        }
      }
      ASSERT_EQ(count_best, 1);
      std::set<std::pair<int, int>> expected;
      for (int e = 0; e < ne; ++e)
        if ((best >> e) & 1) expected.insert(sorted(topo.edges[e].a, topo.edges[e].b));
      EXPECT_EQ(bisected_edges(m, refine_nvb(m, marked)), expected);
    }
  }
}

TEST(Frames, TableRowsAtCorner) {
  // Corner (0,0) joins the left edge (incoming) and the bottom edge (outgoing), omega = pi/2.
  struct Row {
    L bottom, left;
    std::uint8_t bits;
    L label0;
  };
  auto b = [](std::initializer_list<int> j) {
    std::uint8_t m = 0;
    for (int i : j) m |= static_cast<std::uint8_t>(1u << i);
    return m;
  };
  const std::vector<Row> rows{
      {L::Clamped, L::Clamped, b({0, 1, 2, 3, 4, 5}), L::Clamped},
      {L::Clamped, L::SimplySupported, b({0, 1, 2, 3, 4, 5}), L::Clamped},
      {L::SimplySupported, L::Clamped, b({0, 1, 2, 3, 4, 5}), L::Clamped},
      {L::Free, L::Clamped, b({0, 1, 2, 3, 4}), L::Clamped},
      {L::SimplySupported, L::SimplySupported, b({0, 1, 2, 3, 5}), L::SimplySupported},
      {L::Free, L::SimplySupported, b({0, 1, 3}), L::SimplySupported},
      {L::Free, L::Free, 0, L::Free},
  };
  for (const Row& r : rows) {
    const Triangulation m = labelled_square(r.bottom, L::Free, L::Free, r.left);
    const auto frames = assign_vertex_frames(m, build_topology(m));
    const VertexFrame& f = frames[0];
    EXPECT_EQ(f.kind, FrameKind::Boundary);
    EXPECT_NEAR(f.angle, std::numbers::pi / 2, 1e-12);
    EXPECT_EQ(f.constrained, r.bits) << to_string(r.bottom) << "/" << to_string(r.left);
    EXPECT_EQ(f.label0, r.label0);
    if (r.label0 == L::Free) continue;
    // E0 has the stronger label, the incoming (left) edge on ties.  The bottom edge
    // has tangent (1,0) and outward normal (0,-1), the left one (0,-1) and (-1,0).
    auto rank = [](L l) { return l == L::Clamped ? 2 : l == L::SimplySupported ? 1 : 0; };
    const bool e0_bottom = rank(r.bottom) > rank(r.left);
    const Point tau0 = e0_bottom ? Point(1, 0) : Point(0, -1);
    const Point nu0 = e0_bottom ? Point(0, -1) : Point(-1, 0);
    EXPECT_NEAR((f.xi - tau0).norm(), 0.0, 1e-15);
    if (r.bottom == L::SimplySupported && r.left == L::SimplySupported)
      EXPECT_NEAR((f.zeta - Point(1, 0)).norm(), 0.0, 1e-15) << "zeta = tau1";
    else
      EXPECT_NEAR((f.zeta - nu0).norm(), 0.0, 1e-15) << "zeta = nu0";
  }
}

TEST(Frames, TableRowsOnStraightBoundary) {
  // Midpoint of the bottom side after one uniform refinement, omega = pi.
  for (auto [label, bits] : {std::pair{L::Clamped, std::uint8_t{0b11111}}, std::pair{L::SimplySupported, std::uint8_t{0b1011}},
                             std::pair{L::Free, std::uint8_t{0}}}) {
    Triangulation m = refine_times(labelled_square(label, L::Free, L::Free, L::Free), 2);
    int z = -1;
    for (int v = 0; v < m.num_vertices(); ++v)
      if ((m.vertices[v] - Point(0.5, 0)).norm() < 1e-15) z = v;
    ASSERT_GE(z, 0);
    const auto frames = assign_vertex_frames(m, build_topology(m));
    EXPECT_TRUE(frames[z].straight);
    EXPECT_EQ(frames[z].constrained, bits);
    if (label != L::Free) {
      EXPECT_NEAR((frames[z].xi - Point(1, 0)).norm(), 0.0, 1e-15);
      EXPECT_NEAR((frames[z].zeta - Point(0, -1)).norm(), 0.0, 1e-15);
    }
  }
}

TEST(Frames, MixedLabelsAtStraightVertex) {
  // Bottom side split into a clamped and a simply supported half: the vertex (0.5, 0)
  // has E0 clamped.
  std::vector<Point> v{{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 4}, {1, 3, 4}, {1, 2, 3}};
  std::vector<BoundaryEdge> b{{0, 1, L::SimplySupported}, {1, 2, L::Clamped}, {2, 3, L::Free}, {3, 4, L::Free}, {4, 0, L::Free}};
  const Triangulation m = Triangulation::from_coarse(v, t, b);
  const auto frames = assign_vertex_frames(m, build_topology(m));
  EXPECT_TRUE(frames[1].straight);
  EXPECT_EQ(frames[1].label0, L::Clamped);
  EXPECT_EQ(frames[1].label1, L::SimplySupported);
  EXPECT_EQ(frames[1].constrained, 0b11111);
}

TEST(Frames, NewInteriorVertexUsesParentEdge) {
  const Triangulation m = refine_nvb(two_triangle_square(), {0});
  const auto frames = assign_vertex_frames(m, build_topology(m));
  const VertexFrame& f = frames[4];
  EXPECT_EQ(f.kind, FrameKind::InteriorNew);
  const Point tau = Point(1, 1).normalized();
  EXPECT_NEAR(std::abs(f.xi.dot(tau)), 1.0, 1e-15);
  EXPECT_NEAR(f.zeta.dot(f.xi), 0.0, 1e-15);
  EXPECT_NEAR(f.xi.x() * f.zeta.y() - f.xi.y() * f.zeta.x(), -1.0, 1e-15) << "zeta = rot(-90) xi";
}

TEST(Frames, PersistAcrossRefinement) {
  std::mt19937 rng(5);
  Triangulation m = make_benchmark(BenchmarkId::B4).mesh;
  auto frames = assign_vertex_frames(m, build_topology(m));
  for (int step = 0; step < 5; ++step) {
    const Triangulation f = refine_randomly(m, 1, rng, 0.3);
    const auto fine = assign_vertex_frames(f, build_topology(f));
    for (int v = 0; v < m.num_vertices(); ++v) {
      EXPECT_NEAR((fine[v].xi - frames[v].xi).norm(), 0.0, 1e-15);
      EXPECT_NEAR((fine[v].zeta - frames[v].zeta).norm(), 0.0, 1e-15);
      EXPECT_EQ(fine[v].constrained, frames[v].constrained);
    }
    m = f;
    frames = fine;
  }
}

// Frames depend on the vertex and its parent edge only, not on the refinement path
// (up to the sign fixed by the vertex numbering).
TEST(Frames, IndependentOfRefinementPath) {
  const Triangulation base = labelled_square(L::Clamped, L::SimplySupported, L::Free, L::Clamped);
  const Triangulation a = refine_times(base, 3);
  std::mt19937 rng(21);
  Triangulation b = base;
  while (b.num_triangles() < a.num_triangles() * 2) b = refine_randomly(b, 1, rng, 0.4);
  const auto fa = assign_vertex_frames(a, build_topology(a));
  const auto fb = assign_vertex_frames(b, build_topology(b));
  int matched = 0;
  for (int i = 0; i < a.num_vertices(); ++i)
    for (int j = 0; j < b.num_vertices(); ++j) {
      if ((a.vertices[i] - b.vertices[j]).norm() > 1e-14) continue;
      ++matched;
      EXPECT_EQ(fa[i].kind, fb[j].kind);
      EXPECT_EQ(fa[i].constrained, fb[j].constrained);
      EXPECT_NEAR(std::abs(fa[i].xi.dot(fb[j].xi)), 1.0, 1e-14);
      EXPECT_NEAR(std::abs(fa[i].zeta.dot(fb[j].zeta)), 1.0, 1e-14);
    }
  EXPECT_GT(matched, 10);
}

TEST(MeshIo, RoundTripIsExact) {
  std::mt19937 rng(2);
  const Triangulation m = refine_randomly(make_benchmark(BenchmarkId::B4).mesh, 3, rng);
  std::stringstream ss;
  write_mesh(ss, m);
  const Triangulation r = read_mesh(ss);
  EXPECT_EQ(r.triangles, m.triangles);
  ASSERT_EQ(r.vertices.size(), m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) EXPECT_EQ(r.vertices[i], m.vertices[i]);
  ASSERT_EQ(r.boundary_edges.size(), m.boundary_edges.size());
  for (std::size_t i = 0; i < m.boundary_edges.size(); ++i) {
    EXPECT_EQ(r.boundary_edges[i].a, m.boundary_edges[i].a);
    EXPECT_EQ(r.boundary_edges[i].label, m.boundary_edges[i].label);
  }
  validate(r);
}

TEST(MeshIo, RejectsMalformedInput) {
  std::stringstream ss("v 0 0\nv 1 0\nt 0 1 7 0\n");
  EXPECT_THROW(read_mesh(ss), Error);
}

TEST(Labels, ParseNamesAndLetters) {
  EXPECT_EQ(parse_boundary_label("C"), L::Clamped);
  EXPECT_EQ(parse_boundary_label("SimplySupported"), L::SimplySupported);
  EXPECT_EQ(parse_boundary_label("F"), L::Free);
  EXPECT_THROW(parse_boundary_label("X"), Error);
}

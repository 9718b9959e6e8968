#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "argyris/estimator.hpp"
#include "fixtures.hpp"

using namespace argyris;
using namespace argyris::testing;

namespace {

using L = BoundaryLabel;

// u = x^5 + x^2 y^3 - 2 x y^4 + 3 y^2 with bilaplacian 72 x + 24 y.
const std::vector<Monomial> kQuintic = {{1.0, 5, 0}, {1.0, 2, 3}, {-2.0, 1, 4}, {3.0, 0, 2}};

SourceTerm quintic_load() {
  SourceTerm F;
  F.f = [](const Point& x) { return 72.0 * x.x() + 24.0 * x.y(); };
  return F;
}

SpacePtr refined_square(int uniform, int random, std::uint32_t seed, SpaceMode mode = SpaceMode::Extended) {
  std::mt19937 rng(seed);
  return discretize(refine_randomly(refine_times(two_triangle_square(), uniform), random, rng, 0.3), mode);
}

// Same triangles and dofs with the vertex ids permuted.
Triangulation permute_vertices(const Triangulation& m, const std::vector<int>& perm) {
  Triangulation p = m;
  for (int v = 0; v < m.num_vertices(); ++v) {
    p.vertices[perm[v]] = m.vertices[v];
    p.initial_vertex[perm[v]] = m.initial_vertex[v];
    const auto [a, b] = m.vertex_parent_edge[v];
    p.vertex_parent_edge[perm[v]] = a < 0 ? std::array<int, 2>{-1, -1} : std::array<int, 2>{perm[a], perm[b]};
  }
  for (auto& t : p.triangles)
    for (int& v : t) v = perm[v];
  for (auto& e : p.boundary_edges) {
    e.a = perm[e.a];
    e.b = perm[e.b];
  }
  return p;
}

}  // namespace

TEST(Estimate, ComponentsAreConsistent) {
  const auto d = refined_square(1, 3, 2);
  const auto g = smooth_datum(2.0, 1.0, 0.5);
  SourceTerm F;
  F.f = [](const Point& x) { return std::exp(x.x()); };
  const FeFunction uh = solve_direct(assemble_system(d, F, g));
  const IndicatorField ind = estimate(uh, F, g);
  ASSERT_EQ(ind.size(), d->mesh.num_triangles());
  long double s = 0.0L;
  for (int t = 0; t < ind.size(); ++t) {
    EXPECT_GE(ind.volume[t], 0.0);
    EXPECT_GE(ind.normal_jump[t], 0.0);
    EXPECT_GE(ind.third_jump[t], 0.0);
    EXPECT_GE(ind.oscillation[t], 0.0);
    EXPECT_DOUBLE_EQ(ind.eta2[t], ind.volume[t] + ind.normal_jump[t] + ind.third_jump[t] + ind.oscillation[t]);
    s += ind.eta2[t];
  }
  EXPECT_DOUBLE_EQ(ind.total(), std::sqrt(static_cast<double>(s)));
  EXPECT_GT(ind.total(), 0.0);
}

TEST(Estimate, ManufacturedQuinticGivesZero) {
  for (SpaceMode mode : {SpaceMode::Standard, SpaceMode::Extended}) {
    const auto d = refined_square(2, 3, 5, mode);
    const auto g = polynomial_datum(kQuintic);
    const FeFunction uh = solve_direct(assemble_system(d, quintic_load(), g));
    const IndicatorField ind = estimate(uh, quintic_load(), g);
    EXPECT_LT(ind.total(), 1e-8);
    EXPECT_LT(boundary_osc_total(*d, g), 1e-8);
  }
}

TEST(Estimate, UnitSecondNormalDerivativeOnFreeTriangle) {
  // v = (n0 . x)^2 / 2 has d_nunu v = (n_k . n0)^2 on edge k and no third derivatives.
  const auto d = discretize(single_triangle({0.1, 0.2}, {1.3, 0.1}, {0.5, 0.9}, L::Free), SpaceMode::Standard);
  const Edge& e0 = d->topology.edges[d->topology.triangle_edges[0][0]];
  const Point n0 = e0.normal;
  const auto v = polynomial_datum({{0.5 * n0.x() * n0.x(), 2, 0}, {n0.x() * n0.y(), 1, 1}, {0.5 * n0.y() * n0.y(), 0, 2}});
  const IndicatorField ind = estimate(nodal_interpolate(v, d), {}, zero_datum());
  double expected = 0.0;
  for (const Edge& e : d->topology.edges) expected += e.length * std::pow(e.normal.dot(n0), 4);
  expected *= std::sqrt(d->mesh.area(0));
  EXPECT_NEAR(ind.normal_jump[0], expected, 1e-12 * expected);
  EXPECT_LT(ind.third_jump[0], 1e-20);
  EXPECT_LT(ind.volume[0], 1e-20);
  EXPECT_EQ(ind.oscillation[0], 0.0);
  // Along e0 alone the jump is exactly one.
  EXPECT_GE(expected, std::sqrt(d->mesh.area(0)) * e0.length);
}

TEST(Estimate, SmoothQuadraticHasNoInteriorJump) {
  const auto d = discretize(two_triangle_square(L::Free), SpaceMode::Standard);
  const IndicatorField ind = estimate(nodal_interpolate(polynomial_datum({{1.0, 2, 0}}), d), {}, zero_datum());
  // d_xx = 2: on each triangle the boundary edges give |T|^{1/2} * sum |E| (2 n_x^2)^2.
  for (int t = 0; t < 2; ++t) {
    double expected = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Edge& e = d->topology.edges[d->topology.triangle_edges[t][k]];
      if (e.boundary) expected += e.length * std::pow(2.0 * e.normal.x() * e.normal.x(), 2);
    }
    expected *= std::sqrt(d->mesh.area(t));
    EXPECT_NEAR(ind.normal_jump[t], expected, 1e-12);
  }
}

TEST(Estimate, BoundaryLabelsDropJumpTerms) {
  for (L label : {L::Clamped, L::SimplySupported, L::Free}) {
    const auto d = discretize(single_triangle({0, 0}, {1, 0}, {0, 1}, label), SpaceMode::Standard);
    FeFunction v = nodal_interpolate(polynomial_datum({{1.0, 3, 0}, {1.0, 0, 3}, {1.0, 2, 0}, {-1.0, 1, 1}}), d);
    const IndicatorField ind = estimate(v, {}, zero_datum());
    if (label == L::Clamped) EXPECT_EQ(ind.normal_jump[0], 0.0);
    else EXPECT_GT(ind.normal_jump[0], 0.0);
    if (label == L::Free) EXPECT_GT(ind.third_jump[0], 0.0);
    else EXPECT_EQ(ind.third_jump[0], 0.0);
  }
}

TEST(Estimate, PointLoadsContributeNothing) {
  const auto d = discretize(refine_times(labelled_square(L::Clamped, L::Clamped, L::Clamped, L::Clamped), 2),
                            SpaceMode::Extended);
  std::mt19937 rng(3);
  const FeFunction v = random_function(d, rng, true);
  SourceTerm F;
  F.f = [](const Point&) { return 1.0; };
  SourceTerm G = F;
  G.point_loads = {{4, 1.0}};
  const IndicatorField a = estimate(v, F, zero_datum()), b = estimate(v, G, zero_datum());
  EXPECT_EQ(a.eta2, b.eta2);
}

TEST(Estimate, OrientationInvariance) {
  const auto d = refined_square(1, 4, 8);
  std::vector<int> perm(d->mesh.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(12);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto p = discretize(permute_vertices(d->mesh, perm), SpaceMode::Extended);
  const auto g = smooth_datum(1.7, -2.1, 0.3);
  SourceTerm F;
  F.f = [](const Point& x) { return std::sin(x.x() * x.y()); };
  const IndicatorField a = estimate(nodal_interpolate(g, d), F, g);
  const IndicatorField b = estimate(nodal_interpolate(g, p), F, g);
  for (int t = 0; t < a.size(); ++t) {
    EXPECT_NEAR(a.normal_jump[t], b.normal_jump[t], 1e-10 * a.normal_jump[t] + 1e-300) << t;
    EXPECT_NEAR(a.third_jump[t], b.third_jump[t], 1e-10 * a.third_jump[t] + 1e-300) << t;
    EXPECT_NEAR(a.eta2[t], b.eta2[t], 1e-10 * a.eta2[t]) << t;
  }
}

TEST(Estimate, LocalityUnderRefinement) {
  const auto coarse = refined_square(3, 1, 4);
  const auto& m = coarse->mesh;
  std::vector<int> marked;
  for (int t = 0; t < m.num_triangles(); ++t)
    if (m.centroid(t).x() < 0.3 && m.centroid(t).y() < 0.3) marked.push_back(t);
  const auto fine = discretize(refine_nvb(m, marked), SpaceMode::Extended);
  const auto g = smooth_datum(1.1, 0.8, -0.4);
  SourceTerm F;
  F.f = [](const Point& x) { return 1.0 + x.x(); };
  const IndicatorField a = estimate(nodal_interpolate(g, coarse), F, g);
  const IndicatorField b = estimate(nodal_interpolate(g, fine), F, g);
  int compared = 0, changed = 0;
  for (int t = 0; t < fine->mesh.num_triangles(); ++t) {
    bool untouched = !fine->mesh.is_new[t];
    for (int k = 0; k < 3; ++k) {
      const Edge& e = fine->topology.edges[fine->topology.triangle_edges[t][k]];
      for (int s : {e.plus, e.minus})
        if (s >= 0 && fine->mesh.is_new[s]) untouched = false;
    }
    const double before = a.eta2[fine->mesh.parent[t]];
    if (untouched) {
      EXPECT_NEAR(b.eta2[t], before, 1e-12 * before) << t;
      ++compared;
    } else if (!fine->mesh.is_new[t] && std::abs(b.eta2[t] - before) > 1e-9 * before) {
      ++changed;
    }
  }
  EXPECT_GT(compared, 0);
  EXPECT_GT(changed, 0);
}

TEST(BoundaryOsc, ZeroDatum) {
  const auto d = refined_square(2, 2, 1);
  std::vector<int> edges(d->topology.num_edges());
  std::iota(edges.begin(), edges.end(), 0);
  for (double v : boundary_osc(*d, edges, zero_datum())) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(boundary_osc_total(*d, zero_datum()), 0.0);
}

TEST(BoundaryOsc, QuinticsAreAnnihilated) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Monomial> terms;
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; p + q <= 5; ++q) terms.push_back({u(rng), p, q});
  const auto g = polynomial_datum(terms);
  for (L label : {L::Clamped, L::SimplySupported}) {
    const auto d = discretize(refine_times(labelled_square(label, label, label, label), 1), SpaceMode::Extended);
    EXPECT_LT(boundary_osc_total(*d, g), 1e-12);
  }
}

TEST(BoundaryOsc, FreeEdgesAndInteriorEdgesAreZero) {
  const auto d = discretize(labelled_square(L::Clamped, L::Free, L::SimplySupported, L::Free), SpaceMode::Standard);
  const auto g = smooth_datum(3.0, 2.0, 1.0);
  std::vector<int> edges(d->topology.num_edges());
  std::iota(edges.begin(), edges.end(), 0);
  const auto osc = boundary_osc(*d, edges, g);
  for (int e = 0; e < d->topology.num_edges(); ++e) {
    const Edge& edge = d->topology.edges[e];
    if (!edge.boundary || edge.label == L::Free) EXPECT_EQ(osc[e], 0.0) << e;
    else EXPECT_GT(osc[e], 0.0) << e;
  }
  EXPECT_THROW(boundary_osc(*d, {d->topology.num_edges()}, g), PreconditionError);
}

TEST(BoundaryOsc, BisectionDecaysByAtLeastEight) {
  // g = sin(3 pi x) restricted to the bottom edges.
  const auto g = [](const Point& x, const Point&) { return sin(3.0 * std::numbers::pi * Jet3::x(x.x())); };
  auto bottom_osc = [&](const Discretization& d) {
    double s = 0.0;
    int count = 0;
    std::vector<int> ids;
    for (int e = 0; e < d.topology.num_edges(); ++e) {
      const Edge& edge = d.topology.edges[e];
      if (edge.boundary && edge.midpoint.y() == 0.0) ids.push_back(e);
    }
    for (double v : boundary_osc(d, ids, g)) s += v, ++count;
    return std::pair{s, count};
  };
  Triangulation m = two_triangle_square();
  auto [prev, prev_count] = bottom_osc(*discretize(m, SpaceMode::Extended));
  for (int k = 0; k < 4; ++k) {
    m = refine_times(m, 2);
    const auto [cur, count] = bottom_osc(*discretize(m, SpaceMode::Extended));
    ASSERT_EQ(count, 2 * prev_count);
    EXPECT_LE(cur, prev / 8.0 * (1.0 + 1e-9)) << k;
    EXPECT_GT(cur, 0.0);
    prev = cur;
    prev_count = count;
  }
}

TEST(OscillationF, ConstantVanishes) {
  EXPECT_EQ(oscillation_f(two_triangle_square(), [](const Point&) { return 3.5; }), 0.0);
  EXPECT_LT(oscillation_f(refine_times(two_triangle_square(), 3), [](const Point&) { return -1.25; }), 1e-15);
}

TEST(OscillationF, LinearOnReferenceTriangle) {
  // mean 1/3, ||x - 1/3||^2 = 1/36, h^2 = 2.
  const auto m = single_triangle({0, 0}, {1, 0}, {0, 1});
  const auto local = oscillation_f_local(m, [](const Point& x) { return x.x(); });
  ASSERT_EQ(local.size(), 1u);
  EXPECT_NEAR(local[0], 1.0 / 3.0, 1e-14);
}

TEST(OscillationF, HalvingTheMeshSizeScalesByEight) {
  // Two bisections give similar children of half the size.  Summing over f = x
  // and f = y removes the dependence on the children's orientation.
  auto both = [](const Triangulation& m) {
    const double a = oscillation_f(m, [](const Point& x) { return x.x(); });
    const double b = oscillation_f(m, [](const Point& x) { return x.y(); });
    return std::sqrt(a * a + b * b);
  };
  Triangulation m = two_triangle_square();
  double prev = both(m);
  for (int k = 0; k < 3; ++k) {
    m = refine_times(m, 2);
    const double cur = both(m);
    EXPECT_NEAR(cur / prev, 0.125, 1e-12);
    prev = cur;
  }
  // Smooth f: ratio at most 1/8 up to the projection improvement.
  const auto s = [](const Point& x) { return std::sin(4.0 * x.x()) * std::cos(3.0 * x.y()); };
  m = two_triangle_square();
  prev = oscillation_f(m, s);
  for (int k = 0; k < 3; ++k) {
    m = refine_times(m, 2);
    const double cur = oscillation_f(m, s);
    EXPECT_LT(cur / prev, 0.2);
    prev = cur;
  }
}

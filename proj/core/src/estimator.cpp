#include "argyris/estimator.hpp"

#include <cmath>
#include <numeric>

#include "argyris/quadrature.hpp"

namespace argyris {

double IndicatorField::total_sq() const {
  long double s = 0.0L;
  for (double v : eta2) s += v;
  return static_cast<double>(s);
}

double IndicatorField::total() const { return std::sqrt(total_sq()); }

namespace {

double legendre(int k, double t) {
  switch (k) {
    case 0: return 1.0;
    case 1: return std::sqrt(3.0) * (2.0 * t - 1.0);
    default: return std::sqrt(5.0) * (6.0 * t * t - 6.0 * t + 1.0);
  }
}

// ||(1 - Pi_{E,2}) q||^2_{L2(E)} from samples at the oscillation rule's points.
double projection_residual_sq(const std::vector<double>& q, double length) {
  const auto& rule = oscillation_rule();
  const int n = static_cast<int>(rule.points.size());
  double c[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) c[k] += rule.weights[i] * q[i] * legendre(k, rule.points[i]);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = rule.points[i];
    const double r = q[i] - (c[0] * legendre(0, t) + c[1] * legendre(1, t) + c[2] * legendre(2, t));
    s += rule.weights[i] * r * r;
  }
  return s * length;
}

double edge_osc_sq(const Discretization& d, const Edge& e, const BoundaryDatum& g) {
  if (!e.boundary || e.label == BoundaryLabel::Free) return 0.0;
  const auto& rule = oscillation_rule();
  const int n = static_cast<int>(rule.points.size());
  const Point a = d.mesh.vertices[e.a], b = d.mesh.vertices[e.b];
  const Point side = d.mesh.centroid(e.plus);
  std::vector<double> ttt(n), ttn(n);
  for (int i = 0; i < n; ++i) {
    const Jet3 j = g(a + rule.points[i] * (b - a), side);
    ttt[i] = j.d3(e.tangent, e.tangent, e.tangent);
    ttn[i] = j.d3(e.tangent, e.tangent, e.normal);
  }
  const double l3 = e.length * e.length * e.length;
  double s = l3 * projection_residual_sq(ttt, e.length);
  if (e.label == BoundaryLabel::Clamped) s += l3 * projection_residual_sq(ttn, e.length);
  return s;
}

}  // namespace

std::vector<double> boundary_osc(const Discretization& d, const std::vector<int>& edges, const BoundaryDatum& g) {
  std::vector<double> out;
  out.reserve(edges.size());
  for (int e : edges) {
    if (e < 0 || e >= d.topology.num_edges()) throw PreconditionError("edge id out of range");
    out.push_back(edge_osc_sq(d, d.topology.edges[e], g));
  }
  return out;
}

double boundary_osc_total(const Discretization& d, const BoundaryDatum& g) {
  long double s = 0.0L;
  for (const Edge& e : d.topology.edges) s += edge_osc_sq(d, e, g);
  return std::sqrt(static_cast<double>(s));
}

IndicatorField estimate(const FeFunction& u_h, const SourceTerm& F, const BoundaryDatum& g) {
  if (!u_h.space) throw PreconditionError("estimate: function without a space");
  const Discretization& d = *u_h.space;
  if (u_h.coefficients.size() != d.dofs.num_dofs()) throw PreconditionError("estimate: function does not match its space");
  const int nt = d.mesh.num_triangles();
  const int ne = d.topology.num_edges();
  IndicatorField ind;
  ind.volume.assign(nt, 0.0);
  ind.normal_jump.assign(nt, 0.0);
  ind.third_jump.assign(nt, 0.0);
  ind.oscillation.assign(nt, 0.0);
  ind.eta2.assign(nt, 0.0);

  const auto& vol_rule = element_rule();
  const auto& edge_rule = jump_rule();
  const int nq = static_cast<int>(edge_rule.points.size());
  // Per edge and side: samples of d_nunu u_h and d_ttn u_h + d_nu Lap u_h along a -> b.
  std::vector<double> q2(static_cast<std::size_t>(ne) * 2 * nq, 0.0), q3(q2.size(), 0.0);

  for (int t = 0; t < nt; ++t) {
    const ElementPolynomial<double> poly = u_h.on_triangle<double>(t);
    const double area = std::abs(poly.geometry.area());
    double vol = 0.0;
    for (int q = 0; q < vol_rule.size(); ++q) {
      const Eigen::Vector2d xh(vol_rule.points[q][0], vol_rule.points[q][1]);
      const Partials<double> p = poly.partials(xh);
      const double bilap = p(10) + 2.0 * p(12) + p(14);
      const double f = F.f ? F.f(poly.geometry.to_physical(xh)) : 0.0;
      vol += vol_rule.weights[q] * (f - bilap) * (f - bilap);
    }
    ind.volume[t] = area * area * vol * 2.0 * area;
    for (int k = 0; k < 3; ++k) {
      const int e = d.topology.triangle_edges[t][k];
      const Edge& edge = d.topology.edges[e];
      const int side = edge.plus == t ? 0 : 1;
      const Point a = d.mesh.vertices[edge.a], b = d.mesh.vertices[edge.b];
      const Point& n = edge.normal;
      const Point& tau = edge.tangent;
      for (int i = 0; i < nq; ++i) {
        const Partials<double> p = poly.partials_at(a + edge_rule.points[i] * (b - a));
        const double nn = p(3) * n.x() * n.x() + 2.0 * p(4) * n.x() * n.y() + p(5) * n.y() * n.y();
        // Third derivative tensor contracted with (tau, tau, nu).
        const double T[2][2][2] = {{{p(6), p(7)}, {p(7), p(8)}}, {{p(7), p(8)}, {p(8), p(9)}}};
        const double tv[2] = {tau.x(), tau.y()}, nv[2] = {n.x(), n.y()};
        double ttn = 0.0;
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s)
            for (int u = 0; u < 2; ++u) ttn += T[r][s][u] * tv[r] * tv[s] * nv[u];
        const double nlap = n.x() * (p(6) + p(8)) + n.y() * (p(7) + p(9));
        const std::size_t idx = (static_cast<std::size_t>(e) * 2 + side) * nq + i;
        q2[idx] = nn;
        q3[idx] = ttn + nlap;
      }
    }
  }

  for (int e = 0; e < ne; ++e) {
    const Edge& edge = d.topology.edges[e];
    const bool clamped = edge.boundary && edge.label == BoundaryLabel::Clamped;
    const bool supported = edge.boundary && edge.label == BoundaryLabel::SimplySupported;
    double j2 = 0.0, j3 = 0.0;
    for (int i = 0; i < nq; ++i) {
      const std::size_t ip = (static_cast<std::size_t>(e) * 2) * nq + i;
      const std::size_t im = ip + nq;
      const double d2 = edge.boundary ? q2[ip] : q2[ip] - q2[im];
      const double d3 = edge.boundary ? q3[ip] : q3[ip] - q3[im];
      j2 += edge_rule.weights[i] * d2 * d2;
      j3 += edge_rule.weights[i] * d3 * d3;
    }
    j2 *= edge.length;
    j3 *= edge.length;
    if (clamped) j2 = 0.0;
    if (clamped || supported) j3 = 0.0;
    for (int t : {edge.plus, edge.minus}) {
      if (t < 0) continue;
      const double area = d.mesh.area(t);
      ind.normal_jump[t] += std::sqrt(area) * j2;
      ind.third_jump[t] += area * std::sqrt(area) * j3;
    }
    if (edge.boundary) ind.oscillation[edge.plus] += edge_osc_sq(d, edge, g);
  }
  for (int t = 0; t < nt; ++t)
    ind.eta2[t] = ind.volume[t] + ind.normal_jump[t] + ind.third_jump[t] + ind.oscillation[t];
  return ind;
}

std::vector<double> oscillation_f_local(const Triangulation& mesh, const std::function<double(const Point&)>& f) {
  std::vector<double> out(mesh.num_triangles(), 0.0);
  if (!f) return out;
  const auto& rule = element_rule();
  std::vector<double> vals(rule.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto g = make_geometry<double>(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
    double mean = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      vals[q] = f(g.to_physical({rule.points[q][0], rule.points[q][1]}));
      mean += 2.0 * rule.weights[q] * vals[q];
    }
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) s += rule.weights[q] * (vals[q] - mean) * (vals[q] - mean);
    const double h = mesh.diameter(t);
    out[t] = h * h * std::sqrt(s * std::abs(g.det));
  }
  return out;
}

double oscillation_f(const Triangulation& mesh, const std::function<double(const Point&)>& f) {
  long double s = 0.0L;
  for (double v : oscillation_f_local(mesh, f)) s += static_cast<long double>(v) * v;
  return std::sqrt(static_cast<double>(s));
}

}  // namespace argyris

#include "fixtures.hpp"

#include <cmath>

namespace argyris::testing {

Triangulation two_triangle_square(BoundaryLabel label) {
  std::vector<Point> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<std::array<int, 3>> t = {{0, 1, 2}, {0, 2, 3}};
  std::vector<BoundaryEdge> b = {{0, 1, label}, {1, 2, label}, {2, 3, label}, {3, 0, label}};
  return Triangulation::from_coarse(v, t, b);
}

Triangulation single_triangle(const Point& a, const Point& b, const Point& c, BoundaryLabel label) {
  return Triangulation::from_coarse({a, b, c}, {{0, 1, 2}}, {{0, 1, label}, {1, 2, label}, {2, 0, label}});
}

Triangulation labelled_square(BoundaryLabel bottom, BoundaryLabel right, BoundaryLabel top, BoundaryLabel left) {
  std::vector<Point> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  std::vector<std::array<int, 3>> t = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  std::vector<BoundaryEdge> b = {{0, 1, bottom}, {1, 2, right}, {2, 3, top}, {3, 0, left}};
  return Triangulation::from_coarse(v, t, b);
}

Triangulation refine_times(Triangulation mesh, int uniform_steps) {
  for (int i = 0; i < uniform_steps; ++i) mesh = refine_uniform(mesh);
  return mesh;
}

Triangulation refine_randomly(Triangulation mesh, int steps, std::mt19937& rng, double fraction) {
  for (int s = 0; s < steps; ++s) {
    std::vector<int> marked;
    std::bernoulli_distribution pick(fraction);
    for (int t = 0; t < mesh.num_triangles(); ++t)
      if (pick(rng)) marked.push_back(t);
    if (marked.empty()) marked.push_back(0);
    mesh = refine_nvb(mesh, marked);
  }
  return mesh;
}

BoundaryDatum polynomial_datum(std::vector<Monomial> terms) {
  return [terms](const Eigen::Vector2d& x, const Eigen::Vector2d&) {
    Jet3 sum;
    for (const auto& m : terms) {
      Jet3 term = Jet3::constant(m.c);
      for (int i = 0; i < m.p; ++i) term = term * Jet3::x(x.x());
      for (int i = 0; i < m.q; ++i) term = term * Jet3::y(x.y());
      sum = sum + term;
    }
    return sum;
  };
}

double polynomial_value(const std::vector<Monomial>& terms, const Point& x) {
  double s = 0.0;
  for (const auto& m : terms) s += m.c * std::pow(x.x(), m.p) * std::pow(x.y(), m.q);
  return s;
}

BoundaryDatum smooth_datum(double a, double b, double c) {
  return [a, b, c](const Eigen::Vector2d& x, const Eigen::Vector2d&) {
    Jet3 lin = a * Jet3::x(x.x()) + b * Jet3::y(x.y());
    Jet3 s = sin(lin);
    const double e = std::exp(c * x.x());
    Jet3 ex;
    // d^k/dx^k exp(c x) = c^k exp(c x), no y dependence.
    ex.d = {e, c * e, 0, c * c * e, 0, 0, c * c * c * e, 0, 0, 0};
    return s * ex;
  };
}

FeFunction random_function(SpacePtr space, std::mt19937& rng, bool zero_constrained) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FeFunction f(space);
  for (int i = 0; i < space->dofs.num_dofs(); ++i) {
    if (zero_constrained && space->dofs.constrained[i]) continue;
    f.coefficients(i) = u(rng);
  }
  return f;
}

Eigen::Vector2d random_reference_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return {a, b};
}

}  // namespace argyris::testing

#pragma once

#include <random>

#include "argyris/dof_map.hpp"
#include "argyris/mesh.hpp"

namespace argyris::testing {

/// (0,1)^2 split by the diagonal (0,0)-(1,1).
Triangulation two_triangle_square(BoundaryLabel label = BoundaryLabel::Clamped);
Triangulation single_triangle(const Point& a, const Point& b, const Point& c,
                              BoundaryLabel label = BoundaryLabel::Clamped);
/// Unit square with per-side labels (bottom, right, top, left).
Triangulation labelled_square(BoundaryLabel bottom, BoundaryLabel right, BoundaryLabel top, BoundaryLabel left);

Triangulation refine_times(Triangulation mesh, int uniform_steps);
/// Refines a few randomly chosen triangles each step.
Triangulation refine_randomly(Triangulation mesh, int steps, std::mt19937& rng, double fraction = 0.2);

/// Jet of a bivariate polynomial sum c_k x^p_k y^q_k.
struct Monomial {
  double c;
  int p, q;
};
BoundaryDatum polynomial_datum(std::vector<Monomial> terms);
double polynomial_value(const std::vector<Monomial>& terms, const Point& x);

/// Jet of a smooth non-polynomial field: sin(a x + b y) * exp(c x).
BoundaryDatum smooth_datum(double a, double b, double c);

/// Random FeFunction with entries scaled by the natural magnitude of each dof kind.
FeFunction random_function(SpacePtr space, std::mt19937& rng, bool zero_constrained);

/// Uniform random point in triangle t (physical) and its reference coordinates.
Eigen::Vector2d random_reference_point(std::mt19937& rng);

}  // namespace argyris::testing

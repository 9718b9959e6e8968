#pragma once

#include <array>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/LU>

#include "argyris/errors.hpp"
#include "argyris/reference_element.hpp"

namespace argyris {

template <class S>
using Vec2 = Eigen::Matrix<S, 2, 1>;
template <class S>
using LocalMatrix = Eigen::Matrix<S, kLocalDofs, kLocalDofs>;
template <class S>
using LocalVector = Eigen::Matrix<S, kLocalDofs, 1>;
template <class S>
using Partials = Eigen::Matrix<S, kPartials, 1>;

/// Affine map F(xhat) = p0 + J xhat from the reference triangle.
template <class S>
struct ElementGeometry {
  std::array<Vec2<S>, 3> p;
  Eigen::Matrix<S, 2, 2> J;
  Eigen::Matrix<S, 2, 2> Jinv;
  S det = S(0);

  Vec2<S> to_reference(const Vec2<S>& x) const { return Jinv * (x - p[0]); }
  Vec2<S> to_physical(const Vec2<S>& xh) const { return p[0] + J * xh; }
  S area() const { return det / 2; }
};

template <class S>
ElementGeometry<S> make_geometry(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1, const Eigen::Vector2d& p2) {
  ElementGeometry<S> g;
  g.p = {p0.cast<S>(), p1.cast<S>(), p2.cast<S>()};
  g.J.col(0) = g.p[1] - g.p[0];
  g.J.col(1) = g.p[2] - g.p[0];
  g.det = g.J.determinant();
  const S scale = g.J.col(0).squaredNorm() + g.J.col(1).squaredNorm();
  if (!(g.det > S(1e-14) * scale)) throw GeometryError("degenerate or inverted triangle");
  g.Jinv = g.J.inverse();
  return g;
}

/// Block-diagonal matrix T with (physical partials) = T * (reference partials), orders 0..4.
template <class S>
Eigen::Matrix<S, kPartials, kPartials> partial_transform(const Eigen::Matrix<S, 2, 2>& Jinv) {
  const S gx0 = Jinv(0, 0), gx1 = Jinv(1, 0), gy0 = Jinv(0, 1), gy1 = Jinv(1, 1);
  auto ipow = [](S base, int e) {
    S r = S(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  static constexpr int binom[5][5] = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  Eigen::Matrix<S, kPartials, kPartials> T = Eigen::Matrix<S, kPartials, kPartials>::Zero();
  for (int k = 0; k <= 4; ++k)
    for (int a = 0; a <= k; ++a) {
      const int b = k - a;
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
          const S c = S(binom[a][i] * binom[b][j]) * ipow(gx0, i) * ipow(gx1, a - i) * ipow(gy0, j) * ipow(gy1, b - j);
          T(partial_index(a, b), partial_index(i + j, k - i - j)) += c;
        }
    }
  return T;
}

/// Frames of the three vertices and normals of the three local edges of a triangle.
struct LocalFrames {
  std::array<Eigen::Vector2d, 3> xi;
  std::array<Eigen::Vector2d, 3> zeta;
  std::array<Eigen::Vector2d, 3> edge_normal;
};

/// Chain-rule block mapping reference vertex data (u, ux, uy, uxx, uxy, uyy) to
/// the derivatives along directions whose reference images are a and b.
template <class S>
Eigen::Matrix<S, 6, 6> vertex_chain_block(const Vec2<S>& a, const Vec2<S>& b) {
  Eigen::Matrix<S, 6, 6> G = Eigen::Matrix<S, 6, 6>::Zero();
  G(0, 0) = S(1);
  G(1, 1) = a(0), G(1, 2) = a(1);
  G(2, 1) = b(0), G(2, 2) = b(1);
  G(3, 3) = a(0) * a(0), G(3, 4) = 2 * a(0) * a(1), G(3, 5) = a(1) * a(1);
  G(4, 3) = a(0) * b(0), G(4, 4) = a(0) * b(1) + a(1) * b(0), G(4, 5) = a(1) * b(1);
  G(5, 3) = b(0) * b(0), G(5, 4) = 2 * b(0) * b(1), G(5, 5) = b(1) * b(1);
  return G;
}

/// The matrix M_T with physical basis psi_i = sum_j M_ij (phihat_j o F^{-1}).
///
/// With W mapping reference dof values to physical dof values of the same
/// function, M = W^{-T}; W is block upper triangular after reordering, so the
/// inverse is formed blockwise.
template <class S>
LocalMatrix<S> physical_transform(const ElementGeometry<S>& g, const LocalFrames& f) {
  const ReferenceElement& ref = ReferenceElement::instance();
  LocalMatrix<S> Winv = LocalMatrix<S>::Zero();
  for (int v = 0; v < 3; ++v) {
    const Vec2<S> a = g.Jinv * f.xi[v].cast<S>();
    const Vec2<S> b = g.Jinv * f.zeta[v].cast<S>();
    Winv.template block<6, 6>(6 * v, 6 * v) = vertex_chain_block<S>(a, b).inverse();
  }
  for (int k = 0; k < 3; ++k) {
    const Vec2<S> c = g.Jinv * f.edge_normal[k].cast<S>();
    const S alpha = c.dot(ref.normal[k].cast<S>());
    const S beta = c.dot(ref.tangent[k].cast<S>());
    Winv(18 + k, 18 + k) = S(1) / alpha;
    // Row of -alpha^{-1} * beta * t_k^T * Gblock^{-1}.
    Eigen::Matrix<S, 1, 18> t = ref.mid_tangential_ld.row(k).template head<18>().template cast<S>();
    Winv.template block<1, 18>(18 + k, 0) = -(beta / alpha) * (t * Winv.template topLeftCorner<18, 18>());
  }
  return Winv.transpose();
}

/// Piecewise polynomial restricted to one triangle, stored as reference monomial coefficients.
template <class S>
struct ElementPolynomial {
  ElementGeometry<S> geometry;
  Eigen::Matrix<S, kPartials, kPartials> T;
  LocalVector<S> monomials;

  /// Physical partial derivatives (orders 0..4) at a reference point.
  Partials<S> partials(const Vec2<S>& xhat) const {
    PartialTable<S> P;
    monomial_partials<S>(xhat(0), xhat(1), P);
    return T * (P * monomials);
  }
  Partials<S> partials_at(const Vec2<S>& x) const { return partials(geometry.to_reference(x)); }
};

/// Builds the polynomial from physical-basis coefficients c (local numbering).
template <class S>
ElementPolynomial<S> make_element_polynomial(const ElementGeometry<S>& g, const LocalMatrix<S>& M, const LocalVector<S>& c) {
  ElementPolynomial<S> e;
  e.geometry = g;
  e.T = partial_transform<S>(g.Jinv);
  e.monomials = ReferenceElement::instance().coefficients<S>() * (M.transpose() * c);
  return e;
}

}  // namespace argyris

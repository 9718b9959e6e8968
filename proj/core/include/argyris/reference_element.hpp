#pragma once

#include <array>

#include <Eigen/Core>

namespace argyris {

inline constexpr int kLocalDofs = 21;
/// Number of partial derivatives of order 0..4 in two variables.
inline constexpr int kPartials = 15;

/// Position of d^{a+b}/dx^a dy^b in the order-by-order layout
/// (f; fx, fy; fxx, fxy, fyy; fxxx, ...; fxxxx, ...).
constexpr int partial_index(int a, int b) {
  const int k = a + b;
  return k * (k + 1) / 2 + (k - a);
}

template <class S>
using PartialTable = Eigen::Matrix<S, kPartials, kLocalDofs>;

/// Partial derivatives of the 21 monomials x^p y^q (p+q <= 5) at (x, y).
template <class S>
void monomial_partials(S x, S y, PartialTable<S>& out);

/// The quintic Argyris element on conv{(0,0),(1,0),(0,1)}.
///
/// Local dofs: for vertex v = 0,1,2 the six values (u, ux, uy, uxx, uxy, uyy) at v,
/// then the outward normal derivative at the midpoint of edge k = (v_k, v_{k+1}).
struct ReferenceElement {
  std::array<int, kLocalDofs> mono_p{};
  std::array<int, kLocalDofs> mono_q{};
  std::array<Eigen::Vector2d, 3> vertex;
  std::array<Eigen::Vector2d, 3> midpoint;
  std::array<Eigen::Vector2d, 3> normal;
  std::array<Eigen::Vector2d, 3> tangent;
  /// Column j holds the monomial coefficients of basis function j.
  Eigen::Matrix<long double, kLocalDofs, kLocalDofs> coeff_ld;
  Eigen::Matrix<double, kLocalDofs, kLocalDofs> coeff;
  /// Tangential derivative of basis function j at the midpoint of edge k.
  Eigen::Matrix<long double, 3, kLocalDofs> mid_tangential_ld;

  static const ReferenceElement& instance();

  template <class S>
  const Eigen::Matrix<S, kLocalDofs, kLocalDofs>& coefficients() const {
    if constexpr (std::is_same_v<S, long double>)
      return coeff_ld;
    else
      return coeff;
  }

  /// Reference dof functional i applied to a function given by its partials at the dof's node.
  double apply_dof(int i, const Eigen::Matrix<double, kPartials, 1>& partials_at_node) const;

  /// Partials (orders 0..4) of all basis functions at a reference point.
  PartialTable<double> basis_partials(const Eigen::Vector2d& xhat) const;

 private:
  ReferenceElement();
};

}  // namespace argyris

#include "argyris/reference_element.hpp"

#include <cmath>

#include <Eigen/LU>

namespace argyris {

template <class S>
void monomial_partials(S x, S y, PartialTable<S>& out) {
  // Falling factorials p!/(p-a)! times x^(p-a).
  S xp[6], yp[6];
  xp[0] = yp[0] = S(1);
  for (int i = 1; i < 6; ++i) {
    xp[i] = xp[i - 1] * x;
    yp[i] = yp[i - 1] * y;
  }
  out.setZero();
  int m = 0;
  for (int d = 0; d <= 5; ++d)
    for (int q = 0; q <= d; ++q, ++m) {
      const int p = d - q;
      for (int a = 0; a <= p && a <= 4; ++a) {
        S fa = S(1);
        for (int i = 0; i < a; ++i) fa *= S(p - i);
        for (int b = 0; b <= q && a + b <= 4; ++b) {
          S fb = S(1);
          for (int i = 0; i < b; ++i) fb *= S(q - i);
          out(partial_index(a, b), m) = fa * fb * xp[p - a] * yp[q - b];
        }
      }
    }
}

template void monomial_partials<double>(double, double, PartialTable<double>&);
template void monomial_partials<long double>(long double, long double, PartialTable<long double>&);

ReferenceElement::ReferenceElement() {
  int m = 0;
  for (int d = 0; d <= 5; ++d)
    for (int q = 0; q <= d; ++q, ++m) {
      mono_p[m] = d - q;
      mono_q[m] = q;
    }
  vertex = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector2d d = vertex[(k + 1) % 3] - vertex[k];
    midpoint[k] = 0.5 * (vertex[k] + vertex[(k + 1) % 3]);
    tangent[k] = d.normalized();
    normal[k] = Eigen::Vector2d(tangent[k].y(), -tangent[k].x());
  }

  using MatL = Eigen::Matrix<long double, kLocalDofs, kLocalDofs>;
  const long double s = 1.0L / std::sqrt(2.0L);
  const long double nl[3][2] = {{0.0L, -1.0L}, {s, s}, {-1.0L, 0.0L}};
  const long double tl[3][2] = {{1.0L, 0.0L}, {-s, s}, {0.0L, -1.0L}};
  const long double vl[3][2] = {{0.0L, 0.0L}, {1.0L, 0.0L}, {0.0L, 1.0L}};
  MatL V;
  PartialTable<long double> P;
  for (int v = 0; v < 3; ++v) {
    monomial_partials<long double>(vl[v][0], vl[v][1], P);
    for (int j = 0; j < 6; ++j) V.row(6 * v + j) = P.row(j);
  }
  for (int k = 0; k < 3; ++k) {
    const long double mx = (vl[k][0] + vl[(k + 1) % 3][0]) / 2, my = (vl[k][1] + vl[(k + 1) % 3][1]) / 2;
    monomial_partials<long double>(mx, my, P);
    V.row(18 + k) = nl[k][0] * P.row(1) + nl[k][1] * P.row(2);
  }
  coeff_ld = V.fullPivLu().inverse();
  coeff = coeff_ld.cast<double>();
  for (int k = 0; k < 3; ++k) {
    const long double mx = (vl[k][0] + vl[(k + 1) % 3][0]) / 2, my = (vl[k][1] + vl[(k + 1) % 3][1]) / 2;
    monomial_partials<long double>(mx, my, P);
    const PartialTable<long double> B = P * coeff_ld;
    mid_tangential_ld.row(k) = tl[k][0] * B.row(1) + tl[k][1] * B.row(2);
  }
}

const ReferenceElement& ReferenceElement::instance() {
  static const ReferenceElement element;
  return element;
}

double ReferenceElement::apply_dof(int i, const Eigen::Matrix<double, kPartials, 1>& d) const {
  if (i < 18) return d(i % 6);
  const int k = i - 18;
  return normal[k].x() * d(1) + normal[k].y() * d(2);
}

PartialTable<double> ReferenceElement::basis_partials(const Eigen::Vector2d& xhat) const {
  PartialTable<double> P;
  monomial_partials<double>(xhat.x(), xhat.y(), P);
  return P * coeff;
}

}  // namespace argyris

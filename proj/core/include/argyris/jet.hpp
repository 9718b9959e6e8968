#pragma once

#include <array>
#include <cmath>
#include <functional>

#include <Eigen/Core>

namespace argyris {

/// Value and partial derivatives up to order three of a scalar field at one point.
/// Layout: f, fx, fy, fxx, fxy, fyy, fxxx, fxxy, fxyy, fyyy.
struct Jet3 {
  std::array<double, 10> d{};

  double& operator[](int i) { return d[i]; }
  double operator[](int i) const { return d[i]; }

  static Jet3 constant(double c) {
    Jet3 j;
    j.d[0] = c;
    return j;
  }
  static Jet3 x(double x0) {
    Jet3 j;
    j.d[0] = x0;
    j.d[1] = 1.0;
    return j;
  }
  static Jet3 y(double y0) {
    Jet3 j;
    j.d[0] = y0;
    j.d[2] = 1.0;
    return j;
  }

  Eigen::Vector2d gradient() const { return {d[1], d[2]}; }
  Eigen::Matrix2d hessian() const {
    Eigen::Matrix2d h;
    h << d[3], d[4], d[4], d[5];
    return h;
  }
  /// Directional derivatives.
  double d1(const Eigen::Vector2d& u) const { return d[1] * u.x() + d[2] * u.y(); }
  double d2(const Eigen::Vector2d& u, const Eigen::Vector2d& v) const {
    return d[3] * u.x() * v.x() + d[4] * (u.x() * v.y() + u.y() * v.x()) + d[5] * u.y() * v.y();
  }
  double d3(const Eigen::Vector2d& u, const Eigen::Vector2d& v, const Eigen::Vector2d& w) const {
    const double a[2] = {u.x(), u.y()}, b[2] = {v.x(), v.y()}, c[2] = {w.x(), w.y()};
    const double t[2][2][2] = {{{d[6], d[7]}, {d[7], d[8]}}, {{d[7], d[8]}, {d[8], d[9]}}};
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) s += t[i][j][k] * a[i] * b[j] * c[k];
    return s;
  }
};

inline Jet3 operator+(Jet3 a, const Jet3& b) {
  for (int i = 0; i < 10; ++i) a.d[i] += b.d[i];
  return a;
}
inline Jet3 operator-(Jet3 a, const Jet3& b) {
  for (int i = 0; i < 10; ++i) a.d[i] -= b.d[i];
  return a;
}
inline Jet3 operator*(double s, Jet3 a) {
  for (double& v : a.d) v *= s;
  return a;
}

/// Leibniz rule.
inline Jet3 operator*(const Jet3& f, const Jet3& g) {
  const auto& a = f.d;
  const auto& b = g.d;
  Jet3 r;
  r.d[0] = a[0] * b[0];
  r.d[1] = a[1] * b[0] + a[0] * b[1];
  r.d[2] = a[2] * b[0] + a[0] * b[2];
  r.d[3] = a[3] * b[0] + 2 * a[1] * b[1] + a[0] * b[3];
  r.d[4] = a[4] * b[0] + a[1] * b[2] + a[2] * b[1] + a[0] * b[4];
  r.d[5] = a[5] * b[0] + 2 * a[2] * b[2] + a[0] * b[5];
  r.d[6] = a[6] * b[0] + 3 * a[3] * b[1] + 3 * a[1] * b[3] + a[0] * b[6];
  r.d[7] = a[7] * b[0] + 2 * a[4] * b[1] + a[3] * b[2] + a[2] * b[3] + 2 * a[1] * b[4] + a[0] * b[7];
  r.d[8] = a[8] * b[0] + 2 * a[4] * b[2] + a[5] * b[1] + a[1] * b[5] + 2 * a[2] * b[4] + a[0] * b[8];
  r.d[9] = a[9] * b[0] + 3 * a[5] * b[2] + 3 * a[2] * b[5] + a[0] * b[9];
  return r;
}

/// Chain rule for phi(g) given phi and its first three derivatives at g(x).
inline Jet3 compose(const std::array<double, 4>& phi, const Jet3& g) {
  const auto& a = g.d;
  const double p1 = phi[1], p2 = phi[2], p3 = phi[3];
  Jet3 r;
  r.d[0] = phi[0];
  r.d[1] = p1 * a[1];
  r.d[2] = p1 * a[2];
  r.d[3] = p2 * a[1] * a[1] + p1 * a[3];
  r.d[4] = p2 * a[1] * a[2] + p1 * a[4];
  r.d[5] = p2 * a[2] * a[2] + p1 * a[5];
  r.d[6] = p3 * a[1] * a[1] * a[1] + 3 * p2 * a[1] * a[3] + p1 * a[6];
  r.d[7] = p3 * a[1] * a[1] * a[2] + p2 * (2 * a[1] * a[4] + a[2] * a[3]) + p1 * a[7];
  r.d[8] = p3 * a[1] * a[2] * a[2] + p2 * (2 * a[2] * a[4] + a[1] * a[5]) + p1 * a[8];
  r.d[9] = p3 * a[2] * a[2] * a[2] + 3 * p2 * a[2] * a[5] + p1 * a[9];
  return r;
}

inline Jet3 sin(const Jet3& g) {
  const double s = std::sin(g.d[0]), c = std::cos(g.d[0]);
  return compose({s, c, -s, -c}, g);
}

/// Boundary datum g.  The second argument is a point strictly inside a triangle
/// adjacent to the evaluation point; it selects the branch on slit faces.
using BoundaryDatum = std::function<Jet3(const Eigen::Vector2d& x, const Eigen::Vector2d& side)>;

inline BoundaryDatum zero_datum() {
  return [](const Eigen::Vector2d&, const Eigen::Vector2d&) { return Jet3{}; };
}

}  // namespace argyris

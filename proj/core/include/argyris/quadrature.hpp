#pragma once

#include <array>
#include <vector>

namespace argyris {

/// Gauss-Legendre rule on [0,1].
template <class S>
struct LineRule {
  std::vector<S> points;
  std::vector<S> weights;
};

/// Rule on the reference triangle conv{(0,0),(1,0),(0,1)}.
template <class S>
struct TriangleRule {
  std::vector<std::array<S, 2>> points;
  std::vector<S> weights;
  int degree = 0;
  int size() const { return static_cast<int>(weights.size()); }
};

/// Supported n: 1-10, 12, 16, 20.
template <class S>
LineRule<S> gauss_legendre(int n);

/// Collapsed (Duffy) Gauss product rule exact for polynomials of total degree `degree`.
template <class S>
TriangleRule<S> triangle_rule(int degree);

/// Cached double-precision rules used throughout the library.
const TriangleRule<double>& element_rule();   // degree 10
const TriangleRule<double>& oracle_rule();    // degree 14
const LineRule<double>& jump_rule();          // 8 points
const LineRule<double>& oscillation_rule();   // 16 points

}  // namespace argyris

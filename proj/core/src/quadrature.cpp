#include "argyris/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "argyris/errors.hpp"

namespace argyris {

namespace {

template <class S, unsigned N>
LineRule<S> from_boost() {
  using G = boost::math::quadrature::gauss<S, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  LineRule<S> r;
  // Boost stores the non-negative half; expand symmetrically and map to [0,1].
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == S(0)) continue;
    r.points.push_back((S(1) - x[i]) / 2);
    r.weights.push_back(w[i] / 2);
  }
  if (N % 2 == 1) {
    r.points.push_back(S(1) / 2);
    r.weights.push_back(w[0] / 2);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == S(0)) continue;
    r.points.push_back((S(1) + x[i]) / 2);
    r.weights.push_back(w[i] / 2);
  }
  return r;
}

}  // namespace

template <class S>
LineRule<S> gauss_legendre(int n) {
  switch (n) {
    case 1: return from_boost<S, 1>();
    case 2: return from_boost<S, 2>();
    case 3: return from_boost<S, 3>();
    case 4: return from_boost<S, 4>();
    case 5: return from_boost<S, 5>();
    case 6: return from_boost<S, 6>();
    case 7: return from_boost<S, 7>();
    case 8: return from_boost<S, 8>();
    case 9: return from_boost<S, 9>();
    case 10: return from_boost<S, 10>();
    case 12: return from_boost<S, 12>();
    case 16: return from_boost<S, 16>();
    case 20: return from_boost<S, 20>();
    default: throw PreconditionError("unsupported Gauss rule size " + std::to_string(n));
  }
}

template <class S>
TriangleRule<S> triangle_rule(int degree) {
  // x = u, y = v(1-u), dxdy = (1-u) dudv: degree+1 in u, degree in v.
  int n = (degree + 2 + 1) / 2;
  if (n > 10 && n <= 12) n = 12;
  else if (n > 12 && n <= 16) n = 16;
  else if (n > 16) n = 20;
  const LineRule<S> g = gauss_legendre<S>(n);
  TriangleRule<S> r;
  r.degree = degree;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const S u = g.points[i], v = g.points[j];
      r.points.push_back({u, v * (S(1) - u)});
      r.weights.push_back(g.weights[i] * g.weights[j] * (S(1) - u));
    }
  return r;
}

template LineRule<double> gauss_legendre<double>(int);
template LineRule<long double> gauss_legendre<long double>(int);
template TriangleRule<double> triangle_rule<double>(int);
template TriangleRule<long double> triangle_rule<long double>(int);

const TriangleRule<double>& element_rule() {
  static const TriangleRule<double> r = triangle_rule<double>(10);
  return r;
}
const TriangleRule<double>& oracle_rule() {
  static const TriangleRule<double> r = triangle_rule<double>(14);
  return r;
}
const LineRule<double>& jump_rule() {
  static const LineRule<double> r = gauss_legendre<double>(8);
  return r;
}
const LineRule<double>& oscillation_rule() {
  static const LineRule<double> r = gauss_legendre<double>(16);
  return r;
}

}  // namespace argyris

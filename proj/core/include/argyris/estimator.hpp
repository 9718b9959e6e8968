#pragma once

#include <functional>
#include <vector>

#include "argyris/assembly.hpp"

namespace argyris {

/// Per-triangle squared indicator and its parts.
struct IndicatorField {
  std::vector<double> volume;
  std::vector<double> normal_jump;
  std::vector<double> third_jump;
  std::vector<double> oscillation;
  std::vector<double> eta2;

  int size() const { return static_cast<int>(eta2.size()); }
  double total_sq() const;
  double total() const;
};

IndicatorField estimate(const FeFunction& u_h, const SourceTerm& F, const BoundaryDatum& g);

/// osc^2(E, g) for each requested edge (zero for free edges).
std::vector<double> boundary_osc(const Discretization& d, const std::vector<int>& edges, const BoundaryDatum& g);
/// osc(E(boundary), g).
double boundary_osc_total(const Discretization& d, const BoundaryDatum& g);

/// Per triangle h_T^2 ||(1 - Pi_0) f||_{L2(T)}.
std::vector<double> oscillation_f_local(const Triangulation& mesh, const std::function<double(const Point&)>& f);
/// Root of the sum of squared local terms.
double oscillation_f(const Triangulation& mesh, const std::function<double(const Point&)>& f);

}  // namespace argyris

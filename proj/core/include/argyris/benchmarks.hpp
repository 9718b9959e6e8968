#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "argyris/adaptivity.hpp"

namespace argyris {

enum class BenchmarkId : std::uint8_t { B1, B2, B3, B4 };

const char* to_string(BenchmarkId id);
BenchmarkId parse_benchmark(const std::string& text);

struct Benchmark {
  BenchmarkId id = BenchmarkId::B1;
  std::string domain;
  Triangulation mesh;
  SourceTerm F;
  BoundaryDatum g = zero_datum();
  /// |||u|||^2 when only the energy is known.
  std::optional<double> reference_energy;
  /// Exact solution and its Hessian when known.
  BoundaryDatum exact;
  HessianField exact_hessian;

  bool has_reference() const { return reference_energy.has_value() || static_cast<bool>(exact_hessian); }
  Problem problem() const;
};

/// Square, L-shape, slit domain and mixed L-shape with a point load.
Benchmark make_benchmark(BenchmarkId id, double kappa = 0.0);

/// Exact solution on the slit domain.  The second argument selects the branch on the slit.
Jet3 slit_solution(const Point& x, const Point& side);
Eigen::Matrix2d slit_hessian(const Point& x, const Point& side);

/// Energy error |||u - u_h|||; absent without a reference.  For energy-only
/// references the identity |||u|||^2 - 2F(u_h) + |||u_h|||^2 is used (g = 0).
std::optional<double> reference_error(const Benchmark& b, const FeFunction& u_h);

void write_csv_header(std::ostream& out, bool contraction);
void write_csv_row(std::ostream& out, const ConvergenceRecord& rec, bool contraction);

}  // namespace argyris

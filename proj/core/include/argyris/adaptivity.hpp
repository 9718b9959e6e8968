#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "argyris/estimator.hpp"
#include "argyris/multilevel.hpp"

namespace argyris {

/// Minimal set S with theta * sum eta^2 <= sum_S eta^2.  Ties in eta^2 go to the
/// smaller triangle id; zero indicators are never marked.  Result is sorted.
std::vector<int> doerfler_mark(const std::vector<double>& eta2, double theta);
inline std::vector<int> doerfler_mark(const IndicatorField& ind, double theta) { return doerfler_mark(ind.eta2, theta); }

enum class SolverKind : std::uint8_t { Direct, Multigrid, Pcg };

const char* to_string(SolverKind kind);
SolverKind parse_solver(const std::string& text);
const char* to_string(SpaceMode mode);
SpaceMode parse_mode(const std::string& text);

struct AfemConfig {
  double theta = 0.5;
  SpaceMode mode = SpaceMode::Extended;
  SolverKind solver = SolverKind::Direct;
  int r = 1;
  double tol = 0.1;
  long max_dofs = 100000;
  int max_levels = 100;
  bool report_contraction = false;
  NormOptions norm;
  /// Build the multilevel hierarchy even for the direct solver.
  bool keep_hierarchy = false;

  /// Throws ConfigurationError.
  void validate() const;
};

struct Problem {
  Triangulation mesh;
  SourceTerm F;
  BoundaryDatum g = zero_datum();
  /// Energy error of a discrete function, when a reference is known.
  std::function<std::optional<double>(const FeFunction&)> error;
};

struct ConvergenceRecord {
  int level = 0;
  long N = 0;
  std::optional<double> error;
  double eta = 0.0;
  double osc_f = 0.0;
  double osc_g = 0.0;
  int iterations = 0;
  /// NaN for the direct solver.
  double eta_alg = 0.0;
  /// Solve step only.
  double seconds = 0.0;
  double energy_sq = 0.0;
  int marked = 0;
  std::optional<ContractionEstimate> contraction;
};

/// Everything known about one level once it has been solved and estimated.
struct LevelState {
  int level = 0;
  const LinearSystem* system = nullptr;
  const FeFunction* solution = nullptr;
  /// Free-dof coefficients of the solution.
  const Vector* x = nullptr;
  const IndicatorField* indicators = nullptr;
  /// Null unless a hierarchy is being built.
  const Hierarchy* hierarchy = nullptr;
  const ConvergenceRecord* record = nullptr;
  /// Empty on the last level.
  const std::vector<int>* marked = nullptr;
};

struct AfemResult {
  std::vector<ConvergenceRecord> records;
  FeFunction solution;
  Hierarchy hierarchy;
  std::string stop_reason;
};

AfemResult afem_loop(const Problem& problem, const AfemConfig& config,
                     const std::function<void(const LevelState&)>& on_level = {});

}  // namespace argyris

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "argyris/assembly.hpp"

namespace argyris {

/// One level of the multilevel hierarchy.  All matrices act on free dofs.
struct LevelData {
  SpacePtr space;
  SparseMatrix A;
  Vector b;
  /// Prolongation from the previous level (empty at level 0).
  SparseMatrix P;
  /// Free-dof positions of the new dofs, ascending.
  std::vector<int> I;
  /// Rows I of A.
  SparseMatrix A_I;
  /// tril(A restricted to I x I).
  SparseMatrix L;
  /// Level 0 only.
  std::shared_ptr<DirectSolver> coarse;

  int size() const { return static_cast<int>(A.rows()); }
};

struct Hierarchy {
  std::vector<LevelData> levels;
  int r = 1;

  Hierarchy() = default;
  explicit Hierarchy(int smoothing_steps) : r(smoothing_steps) {}

  /// Appends a level.  After the first call every system must live on a one-step
  /// refinement of the previous level's mesh (Extended mode).
  void push(const LinearSystem& system);
  int num_levels() const { return static_cast<int>(levels.size()); }
  const LevelData& finest() const { return levels.back(); }
};

/// Free-dof positions (in the fine space) of every dof attached to a triangle
/// created by the refinement from coarse to fine.
std::vector<int> new_dof_set(const Discretization& fine, const Discretization& coarse);

/// P restricted to free rows and free columns.
SparseMatrix free_prolongation(const Discretization& coarse, const Discretization& fine);

/// max |P^T A_fine P - A_coarse| / max |A_coarse|.
double galerkin_defect(const SparseMatrix& A_fine, const SparseMatrix& P, const SparseMatrix& A_coarse);
/// Same defect after symmetric scaling by diag(A_coarse)^{-1/2}; sensitive to
/// entries far below the largest one.
double scaled_galerkin_defect(const SparseMatrix& A_fine, const SparseMatrix& P, const SparseMatrix& A_coarse);

/// (S y)_I = tril(A_II)^{-1} y_I, zero elsewhere.
Vector local_gauss_seidel(const LevelData& level, const Vector& y);
/// Backward substitution with tril(A_II)^T.
Vector local_gauss_seidel_transpose(const LevelData& level, const Vector& y);

/// B_l y for the symmetric V(r)-cycle.
Vector vcycle(const Hierarchy& h, int level, const Vector& y, int r);

struct IterativeResult {
  Vector x;
  int iterations = 0;
  /// eta_alg of the iterates x^0, x^1, ...
  std::vector<double> eta_alg;
  double final_eta() const { return eta_alg.empty() ? 0.0 : eta_alg.back(); }
};

/// x <- x + B(b - Ax) on the finest level until eta_alg < tol * eta_alg(x0).
IterativeResult mg_solve(const Hierarchy& h, const Vector& b, double tol, int r, const Vector& x0,
                         int max_iterations = 1000);
/// Conjugate gradients preconditioned by the V(r)-cycle.
IterativeResult pcg_solve(const Hierarchy& h, const Vector& b, double tol, int r, const Vector& x0,
                          int max_iterations = 1000);

enum class NormMethod : std::uint8_t { Lanczos, Power };

struct ContractionEstimate {
  /// |||I - BA|||, i.e. the largest eigenvalue of the A-selfadjoint operator I - BA.
  double C = 0.0;
  /// C / (1 - C).
  double c = 0.0;
  int steps = 0;
};

struct NormOptions {
  NormMethod method = NormMethod::Lanczos;
  double tol = 1e-4;
  int max_steps = 10000;
  unsigned seed = 12345;
};

ContractionEstimate iteration_matrix_norm(const Hierarchy& h, int level, int r, const NormOptions& options = {});

}  // namespace argyris

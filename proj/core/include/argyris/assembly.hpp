#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "argyris/dof_map.hpp"

namespace argyris {

struct PointLoad {
  /// Vertex of the initial triangulation.
  int vertex = -1;
  double beta = 1.0;
};

/// F(v) = (f, v) + sum_z beta_z v(z).
struct SourceTerm {
  std::function<double(const Point&)> f;
  std::vector<PointLoad> point_loads;
};

using SparseMatrixLD = Eigen::SparseMatrix<long double, Eigen::RowMajor, int>;

enum class MatrixPrecision : std::uint8_t { Double, Extended };

struct LinearSystem {
  SpacePtr space;
  /// Stiffness matrix over free dofs (global order).
  SparseMatrix A;
  /// Long double assembly of A, present for MatrixPrecision::Extended; A is its rounding.
  std::shared_ptr<const SparseMatrixLD> A_extended;
  Vector b;
  /// Interpolated boundary datum; its free coefficients are zero.
  FeFunction lift;

  /// lift + sum_j x_j phi_j.
  FeFunction expand(const Vector& x) const;
  /// Free-dof coefficients of a function of this space.
  Vector restrict(const FeFunction& f) const;
};

/// 21x21 element stiffness matrix in the physical basis of triangle t.
LocalMatrix<double> element_stiffness(const Discretization& d, int t);
/// Computed in long double throughout.
LocalMatrix<long double> element_stiffness_extended(const Discretization& d, int t);

/// Stiffness matrix over all dofs, constrained ones included.
SparseMatrix assemble_stiffness(const Discretization& d);

/// Right-hand side over free dofs and the lift Ig.  Also returns nothing for
/// constrained dofs; point loads at constrained value dofs vanish.
std::pair<Vector, FeFunction> assemble_load(SpacePtr space, const SourceTerm& F, const BoundaryDatum& g);

LinearSystem assemble_system(SpacePtr space, const SourceTerm& F, const BoundaryDatum& g,
                             MatrixPrecision precision = MatrixPrecision::Double);

/// Throws PreconditionError unless every point load sits at an initial vertex.
void check_point_loads(const Triangulation& mesh, const SourceTerm& F);

/// Sparse LDL^T with AMD ordering; dense Cholesky below 500 unknowns.
class DirectSolver {
 public:
  DirectSolver();
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;
  explicit DirectSolver(const SparseMatrix& A);
  void factorize(const SparseMatrix& A);
  Vector solve(const Vector& b) const;
  int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

/// Solves A x = b to a normwise backward error of 1e-10 and returns lift + x.
FeFunction solve_direct(const LinearSystem& system);
/// With an extended matrix the refinement residuals are taken against it in long double.
Vector solve_direct(const SparseMatrix& A, const Vector& b, const SparseMatrixLD* extended = nullptr);

/// integral of |D^2(f1 - f2)|^2 by quadrature (extended precision accumulation).
double energy_norm_sq(const FeFunction& f1, const FeFunction& f2);
double energy_norm_sq(const FeFunction& f);

/// Exact Hessian; the second argument is a point inside the current triangle.
using HessianField = std::function<Eigen::Matrix2d(const Point& x, const Point& side)>;
double energy_error_sq(const FeFunction& f, const HessianField& exact);

/// F(v) by quadrature, extended precision accumulation.
double load_functional(const SourceTerm& F, const FeFunction& v);

/// Coordinate text dump "row col value" with 17 significant digits.
void write_matrix(std::ostream& out, const SparseMatrix& A);

}  // namespace argyris

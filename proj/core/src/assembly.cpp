#include "argyris/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include "argyris/quadrature.hpp"

namespace argyris {

namespace {

// Reference integrals of products of Hessian components (xx, xy, yy) of the
// reference basis, K[3a+b](i,j) = int Hhat_a(phi_i) Hhat_b(phi_j).
struct StiffnessKernel {
  std::array<LocalMatrix<double>, 9> K;
  /// Same integrals from the long double basis.
  std::array<LocalMatrix<long double>, 9> K_ld;
  // Basis values at the element rule's points (rows).
  Eigen::Matrix<double, Eigen::Dynamic, kLocalDofs> values;

  StiffnessKernel() {
    const auto& rule = element_rule();
    const ReferenceElement& ref = ReferenceElement::instance();
    std::array<LocalMatrix<long double>, 9> acc;
    for (auto& m : acc) m.setZero();
    values.resize(rule.size(), kLocalDofs);
    for (int q = 0; q < rule.size(); ++q) {
      const auto B = ref.basis_partials({rule.points[q][0], rule.points[q][1]});
      values.row(q) = B.row(0);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          acc[3 * a + b] += (rule.weights[q] * B.row(3 + a).transpose() * B.row(3 + b)).cast<long double>();
    }
    for (int i = 0; i < 9; ++i) K[i] = acc[i].cast<double>();

    const TriangleRule<long double> rule_ld = triangle_rule<long double>(10);
    for (auto& m : K_ld) m.setZero();
    PartialTable<long double> P;
    for (int q = 0; q < rule_ld.size(); ++q) {
      monomial_partials<long double>(rule_ld.points[q][0], rule_ld.points[q][1], P);
      const PartialTable<long double> B = P * ref.coeff_ld;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) K_ld[3 * a + b] += rule_ld.weights[q] * B.row(3 + a).transpose() * B.row(3 + b);
    }
  }

  static const StiffnessKernel& instance() {
    static const StiffnessKernel k;
    return k;
  }
};

template <class S>
void add_local(std::vector<Eigen::Triplet<S>>& trip, const std::array<int, kLocalDofs>& rows, const LocalMatrix<S>& K,
               const std::vector<int>* index) {
  for (int i = 0; i < kLocalDofs; ++i) {
    const int r = index ? (*index)[rows[i]] : rows[i];
    if (r < 0) continue;
    for (int j = 0; j < kLocalDofs; ++j) {
      const int c = index ? (*index)[rows[j]] : rows[j];
      if (c < 0) continue;
      trip.emplace_back(r, c, K(i, j));
    }
  }
}

template <class S>
LocalMatrix<S> stiffness(const Discretization& d, int t, const std::array<LocalMatrix<S>, 9>& kernel) {
  using Mat3 = Eigen::Matrix<S, 3, 3>;
  const ElementGeometry<S> g = d.geometry<S>(t);
  const LocalMatrix<S> M = physical_transform<S>(g, d.local_frames(t));
  const Eigen::Matrix<S, kPartials, kPartials> T = partial_transform<S>(g.Jinv);
  const Mat3 T2 = T.template block<3, 3>(3, 3);
  const Mat3 Q = T2.transpose() * Eigen::Matrix<S, 3, 1>(1, 2, 1).asDiagonal() * T2;
  LocalMatrix<S> Khat = LocalMatrix<S>::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) Khat += Q(a, b) * kernel[3 * a + b];
  Khat *= std::abs(g.det);
  const LocalMatrix<S> K = M * Khat * M.transpose();
  return (K + K.transpose()) / S(2);
}

}  // namespace

LocalMatrix<double> element_stiffness(const Discretization& d, int t) {
  return stiffness<double>(d, t, StiffnessKernel::instance().K);
}

LocalMatrix<long double> element_stiffness_extended(const Discretization& d, int t) {
  return stiffness<long double>(d, t, StiffnessKernel::instance().K_ld);
}

SparseMatrix assemble_stiffness(const Discretization& d) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(d.mesh.num_triangles()) * kLocalDofs * kLocalDofs);
  for (int t = 0; t < d.mesh.num_triangles(); ++t)
    add_local(trip, d.dofs.local_to_global[t], element_stiffness(d, t), nullptr);
  SparseMatrix A(d.dofs.num_dofs(), d.dofs.num_dofs());
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

void check_point_loads(const Triangulation& mesh, const SourceTerm& F) {
  for (const PointLoad& p : F.point_loads)
    if (p.vertex < 0 || p.vertex >= mesh.num_vertices() || !mesh.initial_vertex[p.vertex])
      throw PreconditionError("point load at vertex " + std::to_string(p.vertex) +
                              " is not located at a vertex of the initial triangulation");
}

namespace {

LinearSystem assemble(SpacePtr space, const SourceTerm& F, const BoundaryDatum& g, bool with_matrix,
                      MatrixPrecision precision) {
  const Discretization& d = *space;
  check_point_loads(d.mesh, F);
  const DofMap& map = d.dofs;
  LinearSystem sys;
  sys.space = space;
  sys.lift = nodal_interpolate(g, space);
  for (int i : map.free_dofs) sys.lift.coefficients(i) = 0.0;
  const bool has_lift = sys.lift.coefficients.cwiseAbs().maxCoeff() > 0.0;
  sys.b = Vector::Zero(map.num_free());
  const auto& rule = element_rule();
  const auto& kernel = StiffnessKernel::instance();
  const bool extended = with_matrix && precision == MatrixPrecision::Extended;
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<Eigen::Triplet<long double>> trip_ld;
  if (with_matrix && !extended) trip.reserve(static_cast<std::size_t>(d.mesh.num_triangles()) * 300);
  if (extended) trip_ld.reserve(static_cast<std::size_t>(d.mesh.num_triangles()) * 300);
  Eigen::VectorXd fq(rule.size());
  for (int t = 0; t < d.mesh.num_triangles(); ++t) {
    const auto& l2g = map.local_to_global[t];
    const ElementGeometry<double> geo = d.geometry(t);
    const LocalMatrix<double> M = physical_transform<double>(geo, d.local_frames(t));
    LocalVector<double> bl = LocalVector<double>::Zero();
    if (F.f) {
      for (int q = 0; q < rule.size(); ++q)
        fq(q) = rule.weights[q] * F.f(geo.to_physical({rule.points[q][0], rule.points[q][1]}));
      bl = std::abs(geo.det) * (M * (kernel.values.transpose() * fq));
    }
    if (with_matrix || has_lift) {
      if (extended) {
        const LocalMatrix<long double> K = element_stiffness_extended(d, t);
        if (has_lift) bl -= (K * sys.lift.local<long double>(t)).cast<double>();
        add_local(trip_ld, l2g, K, &map.free_index);
      } else {
        const LocalMatrix<double> K = element_stiffness(d, t);
        if (has_lift) bl -= K * sys.lift.local<double>(t);
        if (with_matrix) add_local(trip, l2g, K, &map.free_index);
      }
    }
    for (int i = 0; i < kLocalDofs; ++i) {
      const int r = map.free_index[l2g[i]];
      if (r >= 0) sys.b(r) += bl(i);
    }
  }
  for (const PointLoad& p : F.point_loads) {
    const int r = map.free_index[map.vertex_first[p.vertex]];
    if (r >= 0) sys.b(r) += p.beta;
  }
  if (extended) {
    auto A = std::make_shared<SparseMatrixLD>(map.num_free(), map.num_free());
    A->setFromTriplets(trip_ld.begin(), trip_ld.end());
    sys.A = A->cast<double>();
    sys.A_extended = std::move(A);
  } else if (with_matrix) {
    sys.A.resize(map.num_free(), map.num_free());
    sys.A.setFromTriplets(trip.begin(), trip.end());
  }
  return sys;
}

}  // namespace

std::pair<Vector, FeFunction> assemble_load(SpacePtr space, const SourceTerm& F, const BoundaryDatum& g) {
  LinearSystem s = assemble(std::move(space), F, g, false, MatrixPrecision::Double);
  return {std::move(s.b), std::move(s.lift)};
}

LinearSystem assemble_system(SpacePtr space, const SourceTerm& F, const BoundaryDatum& g, MatrixPrecision precision) {
  return assemble(std::move(space), F, g, true, precision);
}

FeFunction LinearSystem::expand(const Vector& x) const {
  FeFunction u = lift;
  const auto& free = space->dofs.free_dofs;
  for (std::size_t i = 0; i < free.size(); ++i) u.coefficients(free[i]) += x(static_cast<Eigen::Index>(i));
  return u;
}

Vector LinearSystem::restrict(const FeFunction& f) const {
  const auto& free = space->dofs.free_dofs;
  Vector x(static_cast<Eigen::Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i) x(static_cast<Eigen::Index>(i)) = f.coefficients(free[i]);
  return x;
}

struct DirectSolver::Impl {
  bool dense = false;
  /// Symmetric Jacobi scaling; the factored matrix is diag(s) A diag(s).
  Vector s;
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}
DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;
DirectSolver::DirectSolver(const SparseMatrix& A) : DirectSolver() { factorize(A); }

void DirectSolver::factorize(const SparseMatrix& A) {
  n_ = static_cast<int>(A.rows());
  if (n_ == 0) return;
  impl_->dense = n_ < 500;
  impl_->s.resize(n_);
  for (int i = 0; i < n_; ++i) {
    const double d = A.coeff(i, i);
    if (!(d > 0.0)) throw SolverError("stiffness matrix is not positive definite (nonpositive diagonal)");
    impl_->s(i) = 1.0 / std::sqrt(d);
  }
  const SparseMatrix As = impl_->s.asDiagonal() * A * impl_->s.asDiagonal();
  if (impl_->dense) {
    impl_->llt.compute(Eigen::MatrixXd(As));
    if (impl_->llt.info() != Eigen::Success)
      throw SolverError("stiffness matrix is not positive definite (mis-constrained boundary?)");
    return;
  }
  const Eigen::SparseMatrix<double, Eigen::ColMajor, int> Ac = As;
  impl_->ldlt.compute(Ac);
  if (impl_->ldlt.info() != Eigen::Success)
    throw SolverError("sparse factorization failed (singular matrix?)");
  if (!(impl_->ldlt.vectorD().minCoeff() > 0.0))
    throw SolverError("stiffness matrix is not positive definite (mis-constrained boundary?)");
}

Vector DirectSolver::solve(const Vector& b) const {
  if (n_ == 0) return Vector();
  const Vector bs = impl_->s.cwiseProduct(b);
  const Vector y = impl_->dense ? Vector(impl_->llt.solve(bs)) : Vector(impl_->ldlt.solve(bs));
  return impl_->s.cwiseProduct(y);
}

Vector solve_direct(const SparseMatrix& A, const Vector& b, const SparseMatrixLD* extended) {
  if (extended && (extended->rows() != A.rows() || extended->cols() != A.cols()))
    throw PreconditionError("solve_direct: extended matrix has the wrong size");
  DirectSolver s(A);
  Vector x = s.solve(b);
  double normA = 0.0;
  for (int i = 0; i < A.outerSize(); ++i) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(A, i); it; ++it) row += std::abs(it.value());
    normA = std::max(normA, row);
  }
  // Normwise backward error ||r|| / (||A|| ||x|| + ||b||) in the max norm.
  auto backward_error = [&](const Vector& r) {
    const double scale = normA * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>();
    return scale > 0.0 ? r.lpNorm<Eigen::Infinity>() / scale : 0.0;
  };
  if (extended) {
    const Eigen::Matrix<long double, Eigen::Dynamic, 1> b_ld = b.cast<long double>();
    for (int it = 0; it < 4; ++it) {
      const Vector r = (b_ld - *extended * x.cast<long double>()).cast<double>();
      const Vector dx = s.solve(r);
      x += dx;
      if (dx.lpNorm<Eigen::Infinity>() <= 1e-17 * x.lpNorm<Eigen::Infinity>()) break;
    }
  } else {
    for (int it = 0; it < 3; ++it) {
      const Vector r = b - A * x;
      if (backward_error(r) <= 1e-15) break;
      x += s.solve(r);
    }
  }
  if (backward_error(b - A * x) > 1e-10) throw SolverError("direct solve did not reach residual tolerance");
  return x;
}

FeFunction solve_direct(const LinearSystem& system) {
  return system.expand(solve_direct(system.A, system.b, system.A_extended.get()));
}

namespace {

const TriangleRule<long double>& rule_ld() {
  static const TriangleRule<long double> r = triangle_rule<long double>(10);
  return r;
}

}  // namespace

double energy_norm_sq(const FeFunction& f1, const FeFunction& f2) {
  if (f1.space != f2.space &&
      (!f1.space || !f2.space || f1.space->mesh.triangles != f2.space->mesh.triangles ||
       f1.space->dofs.num_dofs() != f2.space->dofs.num_dofs()))
    throw PreconditionError("energy_norm_sq: functions live on different meshes");
  FeFunction diff(f1.space, f1.coefficients - f2.coefficients);
  return energy_norm_sq(diff);
}

double energy_norm_sq(const FeFunction& f) {
  const auto& rule = rule_ld();
  long double sum = 0.0L;
  for (int t = 0; t < f.space->mesh.num_triangles(); ++t) {
    const auto poly = f.on_triangle<long double>(t);
    long double s = 0.0L;
    for (int q = 0; q < rule.size(); ++q) {
      const Partials<long double> p = poly.partials({rule.points[q][0], rule.points[q][1]});
      s += rule.weights[q] * (p(3) * p(3) + 2 * p(4) * p(4) + p(5) * p(5));
    }
    sum += s * std::abs(poly.geometry.det);
  }
  return static_cast<double>(sum);
}

double energy_error_sq(const FeFunction& f, const HessianField& exact) {
  const auto& rule = rule_ld();
  long double sum = 0.0L;
  const Discretization& d = *f.space;
  for (int t = 0; t < d.mesh.num_triangles(); ++t) {
    const auto poly = f.on_triangle<long double>(t);
    const Point c = d.mesh.centroid(t);
    long double s = 0.0L;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2<long double> xh(rule.points[q][0], rule.points[q][1]);
      const Partials<long double> p = poly.partials(xh);
      const Eigen::Matrix2d H = exact(poly.geometry.to_physical(xh).template cast<double>(), c);
      const long double exx = H(0, 0) - p(3), exy = 0.5L * (H(0, 1) + H(1, 0)) - p(4), eyy = H(1, 1) - p(5);
      s += rule.weights[q] * (exx * exx + 2 * exy * exy + eyy * eyy);
    }
    sum += s * std::abs(poly.geometry.det);
  }
  return static_cast<double>(sum);
}

double load_functional(const SourceTerm& F, const FeFunction& v) {
  const auto& rule = rule_ld();
  long double sum = 0.0L;
  const Discretization& d = *v.space;
  if (F.f) {
    for (int t = 0; t < d.mesh.num_triangles(); ++t) {
      const auto poly = v.on_triangle<long double>(t);
      long double s = 0.0L;
      for (int q = 0; q < rule.size(); ++q) {
        const Vec2<long double> xh(rule.points[q][0], rule.points[q][1]);
        const Partials<long double> p = poly.partials(xh);
        s += rule.weights[q] * F.f(poly.geometry.to_physical(xh).template cast<double>()) * p(0);
      }
      sum += s * std::abs(poly.geometry.det);
    }
  }
  for (const PointLoad& p : F.point_loads) sum += p.beta * v.coefficients(d.dofs.vertex_first[p.vertex]);
  return static_cast<double>(sum);
}

void write_matrix(std::ostream& out, const SparseMatrix& A) {
  char buf[96];
  for (int r = 0; r < A.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      out << buf;
    }
}

}  // namespace argyris

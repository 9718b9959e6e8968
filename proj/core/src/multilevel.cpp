#include "argyris/multilevel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace argyris {

namespace {

SparseMatrix select_rows(const SparseMatrix& A, const std::vector<int>& rows) {
  SparseMatrix out(static_cast<int>(rows.size()), A.cols());
  std::vector<int> nnz(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) nnz[i] = A.outerIndexPtr()[rows[i] + 1] - A.outerIndexPtr()[rows[i]];
  out.reserve(nnz);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (SparseMatrix::InnerIterator it(A, rows[i]); it; ++it) out.insert(static_cast<int>(i), it.col()) = it.value();
  out.makeCompressed();
  return out;
}

SparseMatrix lower_block(const SparseMatrix& A, const std::vector<int>& rows) {
  std::vector<int> pos(A.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool diagonal = false;
    for (SparseMatrix::InnerIterator it(A, rows[i]); it; ++it) {
      const int j = pos[it.col()];
      if (j < 0 || j > static_cast<int>(i)) continue;
      if (j == static_cast<int>(i)) diagonal = it.value() > 0.0;
      trip.emplace_back(static_cast<int>(i), j, it.value());
    }
    if (!diagonal) throw SolverError("local smoother: nonpositive diagonal entry, matrix is not SPD");
  }
  SparseMatrix L(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

double max_abs(const SparseMatrix& A) {
  double m = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

void check_hierarchy(const Hierarchy& h, int level) {
  if (h.levels.empty()) throw PreconditionError("empty hierarchy");
  if (level < 0 || level >= h.num_levels()) throw PreconditionError("level outside the hierarchy");
}

// Pre-smoothing on a zero initial guess, then the coarse correction, then post-smoothing.
Vector vcycle_impl(const Hierarchy& h, int level, const Vector& y, int r) {
  const LevelData& L = h.levels[level];
  if (level == 0) return L.coarse ? L.coarse->solve(y) : Vector::Zero(y.size());
  const int m = static_cast<int>(L.I.size());
  Vector w = Vector::Zero(y.size());
  Vector wI = Vector::Zero(m), yI(m);
  for (int i = 0; i < m; ++i) yI(i) = y(L.I[i]);
  for (int s = 0; s < r; ++s) {
    Vector res = yI - L.A_I * w;
    L.L.triangularView<Eigen::Lower>().solveInPlace(res);
    for (int i = 0; i < m; ++i) w(L.I[i]) += res(i);
  }
  for (int i = 0; i < m; ++i) wI(i) = w(L.I[i]);
  // w is supported on I, so A w = A_I^T w_I.
  const Vector res = y - L.A_I.transpose() * wI;
  const Vector coarse_res = L.P.transpose() * res;
  w += L.P * vcycle_impl(h, level - 1, coarse_res, r);
  for (int s = 0; s < r; ++s) {
    Vector res_I = yI - L.A_I * w;
    L.L.transpose().triangularView<Eigen::Upper>().solveInPlace(res_I);
    for (int i = 0; i < m; ++i) w(L.I[i]) += res_I(i);
  }
  return w;
}

struct Divergence {
  int increases = 0;
  void update(double previous, double current, const char* name, int iteration) {
    increases = current > previous ? increases + 1 : 0;
    if (increases >= 3)
      throw SolverError(std::string(name) + ": eta_alg increased in 3 consecutive iterations (iteration " +
                        std::to_string(iteration) + ")");
  }
};

void check_rhs(const Hierarchy& h, const Vector& b, const Vector& x0, int r) {
  if (h.levels.empty()) throw PreconditionError("empty hierarchy");
  const int n = h.finest().size();
  if (b.size() != n || x0.size() != n) throw PreconditionError("right-hand side does not match the finest level");
  if (r < 1) throw ConfigurationError("smoothing steps must be at least 1");
}

}  // namespace

std::vector<int> new_dof_set(const Discretization& fine, const Discretization& coarse) {
  const Triangulation& fm = fine.mesh;
  if (fm.level != coarse.mesh.level + 1 || static_cast<int>(fm.is_new.size()) != fm.num_triangles())
    throw PreconditionError("new_dof_set: levels are not consecutive");
  std::vector<std::uint8_t> flag(fine.dofs.num_dofs(), 0);
  for (int t = 0; t < fm.num_triangles(); ++t)
    if (fm.is_new[t])
      for (int g : fine.dofs.local_to_global[t]) flag[g] = 1;
  std::vector<int> out;
  for (int j = 0; j < fine.dofs.num_free(); ++j)
    if (flag[fine.dofs.free_dofs[j]]) out.push_back(j);
  return out;
}

SparseMatrix free_prolongation(const Discretization& coarse, const Discretization& fine) {
  const SparseMatrix Pfull = prolongation_matrix(coarse, fine);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < fine.dofs.num_free(); ++i)
    for (SparseMatrix::InnerIterator it(Pfull, fine.dofs.free_dofs[i]); it; ++it) {
      const int j = coarse.dofs.free_index[it.col()];
      if (j >= 0) trip.emplace_back(i, j, it.value());
    }
  SparseMatrix P(fine.dofs.num_free(), coarse.dofs.num_free());
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

double galerkin_defect(const SparseMatrix& A_fine, const SparseMatrix& P, const SparseMatrix& A_coarse) {
  const SparseMatrix G = SparseMatrix(P.transpose()) * (A_fine * P);
  const SparseMatrix D = G - A_coarse;
  const double scale = max_abs(A_coarse);
  return scale > 0.0 ? max_abs(D) / scale : max_abs(D);
}

double scaled_galerkin_defect(const SparseMatrix& A_fine, const SparseMatrix& P, const SparseMatrix& A_coarse) {
  const SparseMatrix G = SparseMatrix(P.transpose()) * (A_fine * P);
  Vector d(A_coarse.rows());
  for (int i = 0; i < d.size(); ++i) {
    const double a = A_coarse.coeff(i, i);
    if (!(a > 0.0)) throw PreconditionError("scaled_galerkin_defect: nonpositive diagonal");
    d(i) = 1.0 / std::sqrt(a);
  }
  return max_abs(SparseMatrix(d.asDiagonal() * (G - A_coarse) * d.asDiagonal()));
}

void Hierarchy::push(const LinearSystem& system) {
  LevelData L;
  L.space = system.space;
  L.A = system.A;
  L.b = system.b;
  if (levels.empty()) {
    if (L.A.rows() > 0) L.coarse = std::make_shared<DirectSolver>(L.A);
  } else {
    const Discretization& coarse = *levels.back().space;
    const Discretization& fine = *system.space;
    if (fine.dofs.mode != SpaceMode::Extended)
      throw ConfigurationError("multilevel hierarchy requires the Extended space");
    L.P = free_prolongation(coarse, fine);
    L.I = new_dof_set(fine, coarse);
    L.A_I = select_rows(L.A, L.I);
    L.L = lower_block(L.A, L.I);
  }
  levels.push_back(std::move(L));
}

Vector local_gauss_seidel(const LevelData& level, const Vector& y) {
  const int m = static_cast<int>(level.I.size());
  Vector yI(m);
  for (int i = 0; i < m; ++i) yI(i) = y(level.I[i]);
  level.L.triangularView<Eigen::Lower>().solveInPlace(yI);
  Vector out = Vector::Zero(y.size());
  for (int i = 0; i < m; ++i) out(level.I[i]) = yI(i);
  return out;
}

Vector local_gauss_seidel_transpose(const LevelData& level, const Vector& y) {
  const int m = static_cast<int>(level.I.size());
  Vector yI(m);
  for (int i = 0; i < m; ++i) yI(i) = y(level.I[i]);
  level.L.transpose().triangularView<Eigen::Upper>().solveInPlace(yI);
  Vector out = Vector::Zero(y.size());
  for (int i = 0; i < m; ++i) out(level.I[i]) = yI(i);
  return out;
}

Vector vcycle(const Hierarchy& h, int level, const Vector& y, int r) {
  check_hierarchy(h, level);
  if (y.size() != h.levels[level].size()) throw PreconditionError("vcycle: vector size does not match the level");
  if (r < 1) throw ConfigurationError("smoothing steps must be at least 1");
  return vcycle_impl(h, level, y, r);
}

IterativeResult mg_solve(const Hierarchy& h, const Vector& b, double tol, int r, const Vector& x0,
                         int max_iterations) {
  check_rhs(h, b, x0, r);
  const int top = h.num_levels() - 1;
  const SparseMatrix& A = h.finest().A;
  IterativeResult out;
  out.x = x0;
  Vector res = b - A * out.x;
  Vector z = vcycle_impl(h, top, res, r);
  double eta = std::sqrt(std::max(0.0, res.dot(z)));
  const double eta0 = eta;
  out.eta_alg.push_back(eta);
  Divergence guard;
  while (eta > 0.0 && !(eta < tol * eta0)) {
    if (out.iterations >= max_iterations) throw SolverError("mg_solve: iteration limit reached");
    out.x += z;
    ++out.iterations;
    res = b - A * out.x;
    z = vcycle_impl(h, top, res, r);
    const double next = std::sqrt(std::max(0.0, res.dot(z)));
    guard.update(eta, next, "mg_solve", out.iterations);
    eta = next;
    out.eta_alg.push_back(eta);
  }
  return out;
}

IterativeResult pcg_solve(const Hierarchy& h, const Vector& b, double tol, int r, const Vector& x0,
                          int max_iterations) {
  check_rhs(h, b, x0, r);
  const int top = h.num_levels() - 1;
  const SparseMatrix& A = h.finest().A;
  IterativeResult out;
  out.x = x0;
  Vector res = b - A * out.x;
  Vector z = vcycle_impl(h, top, res, r);
  double rho = res.dot(z);
  double eta = std::sqrt(std::max(0.0, rho));
  const double eta0 = eta;
  out.eta_alg.push_back(eta);
  Vector p = z;
  Divergence guard;
  while (eta > 0.0 && !(eta < tol * eta0)) {
    if (out.iterations >= max_iterations) throw SolverError("pcg_solve: iteration limit reached");
    const Vector q = A * p;
    const double curvature = p.dot(q);
    if (!(curvature > 0.0)) throw SolverError("pcg_solve: nonpositive curvature, operator is not SPD");
    const double alpha = rho / curvature;
    out.x += alpha * p;
    res -= alpha * q;
    ++out.iterations;
    z = vcycle_impl(h, top, res, r);
    const double rho_next = res.dot(z);
    if (rho_next < 0.0) throw SolverError("pcg_solve: preconditioner is not positive definite");
    p = z + (rho_next / rho) * p;
    rho = rho_next;
    const double next = std::sqrt(rho);
    guard.update(eta, next, "pcg_solve", out.iterations);
    eta = next;
    out.eta_alg.push_back(eta);
  }
  return out;
}

ContractionEstimate iteration_matrix_norm(const Hierarchy& h, int level, int r, const NormOptions& options) {
  check_hierarchy(h, level);
  if (r < 1) throw ConfigurationError("smoothing steps must be at least 1");
  ContractionEstimate est;
  const int n = h.levels[level].size();
  if (level == 0 || n == 0) return est;
  const SparseMatrix& A = h.levels[level].A;
  auto apply = [&](const Vector& v) -> Vector { return v - vcycle_impl(h, level, A * v, r); };
  auto a_norm = [&](const Vector& v) { return std::sqrt(std::max(0.0, v.dot(A * v))); };

  std::mt19937 rng(options.seed);
  std::normal_distribution<double> normal;
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = normal(rng);
  x /= a_norm(x);

  if (options.method == NormMethod::Power) {
    double lambda = 0.0;
    for (int k = 1; k <= options.max_steps; ++k) {
      const Vector y = apply(x);
      const double next = y.dot(A * x);
      est.steps = k;
      const double norm = a_norm(y);
      if (norm == 0.0) {
        lambda = 0.0;
        break;
      }
      x = y / norm;
      if (k > 1 && std::abs(next - lambda) <= options.tol * std::abs(next)) {
        lambda = next;
        break;
      }
      lambda = next;
      if (k == options.max_steps) throw SolverError("iteration_matrix_norm: power iteration did not converge");
    }
    est.C = lambda;
  } else {
    const int kmax = std::min({options.max_steps, n, 400});
    std::vector<Vector> V{x}, AV{A * x};
    std::vector<double> alpha, beta;
    double ritz = 0.0;
    for (int k = 0; k < kmax; ++k) {
      Vector w = apply(V[k]);
      Vector Aw = A * w;
      alpha.push_back(w.dot(AV[k]));
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < V.size(); ++i) {
          const double c = Aw.dot(V[i]);
          w -= c * V[i];
          Aw -= c * AV[i];
        }
      const double b = std::sqrt(std::max(0.0, w.dot(Aw)));
      const int m = static_cast<int>(alpha.size());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)) : Eigen::VectorXd();
      eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      ritz = eig.eigenvalues()(m - 1);
      const double residual = b * std::abs(eig.eigenvectors()(m - 1, m - 1));
      est.steps = k + 1;
      if (residual <= options.tol * std::abs(ritz) || b <= 1e-14) break;
      if (k + 1 == kmax && kmax < n)
        throw SolverError("iteration_matrix_norm: Lanczos did not converge");
      beta.push_back(b);
      V.push_back(w / b);
      AV.push_back(Aw / b);
    }
    est.C = ritz;
  }
  est.C = std::max(0.0, est.C);
  est.c = est.C < 1.0 ? est.C / (1.0 - est.C) : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace argyris

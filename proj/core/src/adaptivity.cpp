#include "argyris/adaptivity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace argyris {

std::vector<int> doerfler_mark(const std::vector<double>& eta2, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigurationError("bulk parameter must lie in (0, 1]");
  std::vector<int> idx;
  long double total = 0.0L;
  for (std::size_t t = 0; t < eta2.size(); ++t) {
    if (!(eta2[t] >= 0.0)) throw PreconditionError("negative or NaN indicator");
    if (eta2[t] > 0.0) {
      idx.push_back(static_cast<int>(t));
      total += eta2[t];
    }
  }
  if (idx.empty()) return idx;
  if (theta == 1.0) return idx;
  auto before = [&](int a, int b) { return eta2[a] != eta2[b] ? eta2[a] > eta2[b] : a < b; };
  long double need = static_cast<long double>(theta) * total;
  std::size_t lo = 0, hi = idx.size();
  // Invariant: idx[0, lo) is taken, the answer lies in idx[lo, hi) and its sum covers need.
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi, before);
    long double s = 0.0L;
    for (std::size_t i = lo; i < mid; ++i) s += eta2[idx[i]];
    if (s >= need) {
      hi = mid;
    } else {
      need -= s;
      lo = mid;
    }
  }
  idx.resize(lo + 1);
  std::sort(idx.begin(), idx.end());
  return idx;
}

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Direct: return "direct";
    case SolverKind::Multigrid: return "mg";
    case SolverKind::Pcg: return "pcg";
  }
  return "?";
}

SolverKind parse_solver(const std::string& text) {
  if (text == "direct") return SolverKind::Direct;
  if (text == "mg") return SolverKind::Multigrid;
  if (text == "pcg") return SolverKind::Pcg;
  throw ConfigurationError("unknown solver '" + text + "'");
}

const char* to_string(SpaceMode mode) { return mode == SpaceMode::Standard ? "standard" : "extended"; }

SpaceMode parse_mode(const std::string& text) {
  if (text == "standard") return SpaceMode::Standard;
  if (text == "extended") return SpaceMode::Extended;
  throw ConfigurationError("unknown space mode '" + text + "'");
}

void AfemConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigurationError("theta must lie in (0, 1]");
  if (r < 1) throw ConfigurationError("r must be at least 1");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigurationError("tol must lie in (0, 1)");
  if (max_dofs < 1) throw ConfigurationError("max_dofs must be positive");
  if (max_levels < 1) throw ConfigurationError("max_levels must be positive");
  const bool multilevel = solver != SolverKind::Direct || keep_hierarchy || report_contraction;
  if (mode == SpaceMode::Standard && multilevel)
    throw ConfigurationError("multilevel solvers need the Extended space (standard spaces are not nested)");
}

AfemResult afem_loop(const Problem& problem, const AfemConfig& config,
                     const std::function<void(const LevelState&)>& on_level) {
  config.validate();
  check_point_loads(problem.mesh, problem.F);
  const bool multilevel = config.solver != SolverKind::Direct || config.keep_hierarchy || config.report_contraction;
  AfemResult result;
  result.hierarchy.r = config.r;
  SpacePtr space = discretize(problem.mesh, config.mode);
  FeFunction previous;
  for (int level = 0;; ++level) {
    try {
      const LinearSystem system = assemble_system(
          space, problem.F, problem.g,
          config.solver == SolverKind::Direct ? MatrixPrecision::Extended : MatrixPrecision::Double);
      if (multilevel) result.hierarchy.push(system);
      ConvergenceRecord rec;
      rec.level = level;
      rec.N = system.A.rows();
      Vector x;
      const auto start = std::chrono::steady_clock::now();
      if (config.solver == SolverKind::Direct) {
        x = system.A.rows() > 0 ? solve_direct(system.A, system.b, system.A_extended.get()) : Vector();
        rec.eta_alg = std::numeric_limits<double>::quiet_NaN();
      } else {
        Vector x0 = previous.space ? system.restrict(FeFunction(space, prolong_coefficients(previous, *space)))
                                   : Vector(Vector::Zero(system.A.rows()));
        const IterativeResult it = config.solver == SolverKind::Multigrid
                                       ? mg_solve(result.hierarchy, system.b, config.tol, config.r, x0)
                                       : pcg_solve(result.hierarchy, system.b, config.tol, config.r, x0);
        x = it.x;
        rec.iterations = it.iterations;
        rec.eta_alg = it.final_eta();
      }
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      FeFunction u_h = system.expand(x);
      const IndicatorField ind = estimate(u_h, problem.F, problem.g);
      rec.eta = ind.total();
      rec.osc_f = oscillation_f(space->mesh, problem.F.f);
      rec.osc_g = boundary_osc_total(*space, problem.g);
      rec.energy_sq = energy_norm_sq(u_h);
      if (problem.error) rec.error = problem.error(u_h);
      if (config.report_contraction)
        rec.contraction = iteration_matrix_norm(result.hierarchy, result.hierarchy.num_levels() - 1, config.r, config.norm);

      std::string stop;
      std::vector<int> marked;
      SpacePtr next;
      if (rec.eta < 1e-12 * (1.0 + std::sqrt(rec.energy_sq))) {
        stop = "estimator vanished";
      } else if (level + 1 >= config.max_levels) {
        stop = "level limit";
      } else {
        marked = doerfler_mark(ind, config.theta);
        next = discretize(refine_nvb(space->mesh, marked), config.mode);
        if (next->dofs.num_free() > config.max_dofs) {
          stop = "dof limit";
          marked.clear();
        }
      }
      rec.marked = static_cast<int>(marked.size());
      result.records.push_back(rec);
      if (on_level) {
        LevelState state;
        state.level = level;
        state.system = &system;
        state.solution = &u_h;
        state.x = &x;
        state.indicators = &ind;
        state.hierarchy = multilevel ? &result.hierarchy : nullptr;
        state.record = &result.records.back();
        state.marked = &marked;
        on_level(state);
      }
      if (!stop.empty()) {
        result.stop_reason = stop;
        result.solution = std::move(u_h);
        return result;
      }
      previous = std::move(u_h);
      space = std::move(next);
    } catch (const SolverError& e) {
      throw SolverError("level " + std::to_string(level) + ": " + e.what());
    }
  }
}

}  // namespace argyris

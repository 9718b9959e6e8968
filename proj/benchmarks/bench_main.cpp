#include <benchmark/benchmark.h>

#include <random>

#include "argyris/benchmarks.hpp"

using namespace argyris;

namespace {

// Space after `levels` uniform refinements of the square benchmark mesh.
SpacePtr square_space(int levels) {
  Triangulation m = make_benchmark(BenchmarkId::B1).mesh;
  for (int k = 0; k < levels; ++k) m = refine_uniform(m);
  return discretize(m, SpaceMode::Extended);
}

SourceTerm unit_load() {
  SourceTerm F;
  F.f = [](const Point&) { return 1.0; };
  return F;
}

Hierarchy uniform_hierarchy(int levels) {
  Hierarchy h(1);
  Triangulation m = make_benchmark(BenchmarkId::B1).mesh;
  for (int k = 0; k < levels; ++k) {
    if (k > 0) m = refine_uniform(m);
    h.push(assemble_system(discretize(m, SpaceMode::Extended), unit_load(), zero_datum()));
  }
  return h;
}

void BM_ElementStiffness(benchmark::State& state) {
  const SpacePtr s = square_space(2);
  int t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(element_stiffness(*s, t));
    t = (t + 1) % s->mesh.num_triangles();
  }
}
BENCHMARK(BM_ElementStiffness);

void BM_AssembleSystem(benchmark::State& state) {
  const SpacePtr s = square_space(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system(s, unit_load(), zero_datum()));
  state.counters["N"] = s->dofs.num_free();
  state.SetComplexityN(s->dofs.num_free());
}
BENCHMARK(BM_AssembleSystem)->DenseRange(2, 5)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Estimate(benchmark::State& state) {
  const SpacePtr s = square_space(static_cast<int>(state.range(0)));
  const LinearSystem sys = assemble_system(s, unit_load(), zero_datum());
  const FeFunction u = sys.expand(solve_direct(sys.A, sys.b));
  for (auto _ : state) benchmark::DoNotOptimize(estimate(u, unit_load(), zero_datum()));
  state.SetComplexityN(s->mesh.num_triangles());
}
BENCHMARK(BM_Estimate)->DenseRange(2, 5)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DoerflerMark(benchmark::State& state) {
  std::mt19937 rng(1);
  std::exponential_distribution<double> d;
  std::vector<double> eta2(static_cast<std::size_t>(state.range(0)));
  for (auto& e : eta2) e = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(doerfler_mark(eta2, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DoerflerMark)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

void BM_RefineNvb(benchmark::State& state) {
  Triangulation m = make_benchmark(BenchmarkId::B2).mesh;
  for (int k = 0; k < static_cast<int>(state.range(0)); ++k) m = refine_uniform(m);
  std::vector<int> marked;
  for (int t = 0; t < m.num_triangles(); t += 10) marked.push_back(t);
  for (auto _ : state) benchmark::DoNotOptimize(refine_nvb(m, marked));
  state.SetComplexityN(m.num_triangles());
}
BENCHMARK(BM_RefineNvb)->DenseRange(3, 6)->Unit(benchmark::kMillisecond)->Complexity();

void BM_VCycle(benchmark::State& state) {
  const Hierarchy h = uniform_hierarchy(static_cast<int>(state.range(0)));
  const int l = h.num_levels() - 1;
  const Vector y = Vector::Ones(h.finest().size());
  for (auto _ : state) benchmark::DoNotOptimize(vcycle(h, l, y, 1));
  state.counters["N"] = h.finest().size();
  state.SetComplexityN(h.finest().size());
}
BENCHMARK(BM_VCycle)->DenseRange(3, 6)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DirectSolve(benchmark::State& state) {
  const SpacePtr s = square_space(static_cast<int>(state.range(0)));
  const LinearSystem sys = assemble_system(s, unit_load(), zero_datum());
  for (auto _ : state) benchmark::DoNotOptimize(solve_direct(sys.A, sys.b));
  state.counters["N"] = sys.A.rows();
  state.SetComplexityN(sys.A.rows());
}
BENCHMARK(BM_DirectSolve)->DenseRange(2, 5)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
BENCHMARK_MAIN();

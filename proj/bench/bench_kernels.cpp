// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "omegacore/amalgamation.hpp"
#include "omegacore/cores.hpp"
#include "omegacore/reduction.hpp"
#include "omegacore/templates.hpp"

using namespace omegacore;

namespace {

FinStructure odd_wheel(int spokes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < spokes; ++i) {
    edges.emplace_back(0, 1 + i);
    edges.emplace_back(1 + i, 1 + (i + 1) % spokes);
  }
  return graph(spokes + 1, edges);
}

FinStructure tournament(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) arcs.emplace_back((a * 7 + b) % 3 ? a : b, (a * 7 + b) % 3 ? b : a);
  return graph(n, arcs, false);
}

ClassSpec triangle_free() {
  return ClassSpec{Signature({{"E", 2}}), {{complete_graph(3), PatternMode::induced}}, true};
}

void BM_BruteForce(benchmark::State& state) {
  auto t = complete_graph(3);
  auto inst = odd_wheel(7);  // 8 variables, unsatisfiable: full sweep
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? brute_force_solve(t, inst) : brute_force_solve_serial(t, inst));
}
BENCHMARK(BM_BruteForce)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Amalgamation(benchmark::State& state) {
  auto spec = triangle_free();
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? check_amalgamation(spec, 4) : check_amalgamation_serial(spec, 4));
}
BENCHMARK(BM_Amalgamation)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Switching(benchmark::State& state) {
  auto d = tournament(14);
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? solve_switching_acyclic(d) : solve_switching_acyclic_serial(d));
}
BENCHMARK(BM_Switching)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StrictEndomorphism(benchmark::State& state) {
  auto s = disjoint_union(cycle_graph(9), complete_graph(3));
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0)
                                 ? strict_endomorphism(s, CoreStrategy::least_witness)
                                 : strict_endomorphism_serial(s, CoreStrategy::least_witness));
}
BENCHMARK(BM_StrictEndomorphism)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

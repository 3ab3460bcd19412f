// Serial reference vs OpenMP kernels: operator assembly and relation checking.

#include <benchmark/benchmark.h>

#include "qnil/analysis.hpp"

using namespace qnil;

namespace {

ModuleSpec bench_spec(int which) {
  ModuleSpec s;
  switch (which) {
    case 0: s.family = Family::B; s.n = 3; s.k = 3; s.lambda = {1}; s.l = 5; break;
    case 1: s.family = Family::G; s.n = 2; s.k = 1; s.lambda = {1, 2}; s.l = 5; break;
    default: s.family = Family::D; s.n = 4; s.k = 3; s.lambda = {1, 1}; s.l = 3; break;
  }
  return s;
}

void BM_build(benchmark::State& st) {
  const auto s = bench_spec(static_cast<int>(st.range(0)));
  const BuildOptions opt{st.range(1) != 0, 0};
  for (auto _ : st) benchmark::DoNotOptimize(build(s, opt));
  st.SetLabel(s.label() + (opt.parallel ? " omp" : " serial"));
}

void BM_relations(benchmark::State& st) {
  const auto s = bench_spec(static_cast<int>(st.range(0)));
  const auto g = build(s);
  const VerifyOptions opt{st.range(1) != 0, 0};
  for (auto _ : st) benchmark::DoNotOptimize(verify_defining_relations(g, opt));
  st.SetLabel(s.label() + (opt.parallel ? " omp" : " serial"));
}

}  // namespace

BENCHMARK(BM_build)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_relations)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "glvortex/banded.hpp"
#include "glvortex/grid.hpp"
#include "glvortex/profile.hpp"
#include "glvortex/rng.hpp"

namespace {

void bm_banded_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  glv::Rng rng(42);
  glv::BandedSym m(n, 4);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, 8.0 + rng.uniform());
    for (int d = 1; d <= 4 && i + d < n; ++d) m.set(i, i + d, rng.uniform(-1.0, 1.0));
  }
  std::vector<double> b(static_cast<size_t>(n), 1.0);
  for (auto _ : state) {
    m.add(0, 0, 0.0);  // invalidate so the factorization is timed
    benchmark::DoNotOptimize(glv::banded_solve(m, b));
  }
}
BENCHMARK(bm_banded_solve)->Arg(4001)->Arg(16004);

void bm_solve_profile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = glv::build_grid(60.0, n, 2.0);
  const glv::PhysParams params{2.0, 1.0, -0.5, 1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(glv::solve_profile(params, {1, 1}, grid, 1e-10));
  }
}
BENCHMARK(bm_solve_profile)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "ommsim/ommsim.hpp"

namespace {

using namespace ommsim;

struct DefaultSystem {
  SystemParams params = default_params();
  DriftMatrix drift = build_drift(params, solve_semiclassics(params));
  DiffusionMatrix diffusion = build_diffusion(params);
};

void BM_Semiclassics(benchmark::State& state) {
  const SystemParams p = default_params();
  for (auto _ : state) benchmark::DoNotOptimize(solve_semiclassics(p));
}
BENCHMARK(BM_Semiclassics);

void BM_Stability(benchmark::State& state) {
  const DefaultSystem sys;
  for (auto _ : state) benchmark::DoNotOptimize(stability(sys.drift));
}
BENCHMARK(BM_Stability);

void BM_LyapunovKronecker(benchmark::State& state) {
  const DefaultSystem sys;
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(sys.drift, sys.diffusion));
}
BENCHMARK(BM_LyapunovKronecker);

// Slow on purpose: the relaxation oracle needs ~1/(dt |max Re|) steps.
void BM_Rk4Relaxation(benchmark::State& state) {
  const DefaultSystem sys;
  const Eigen::MatrixXd v0 = 0.5 * Eigen::MatrixXd::Identity(10, 10);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_to_steady_state(sys.drift.a, sys.diffusion.dense(), v0));
}
BENCHMARK(BM_Rk4Relaxation)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_LogNegativity(benchmark::State& state) {
  const DefaultSystem sys;
  const auto v = solve_lyapunov(sys.drift, sys.diffusion).v;
  const Matrix4 block = two_mode_block(v, pair_from_label("ab"));
  for (auto _ : state) benchmark::DoNotOptimize(log_negativity(block));
}
BENCHMARK(BM_LogNegativity);

void BM_EvaluatePoint(benchmark::State& state) {
  const SystemParams p = default_params();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(p));
}
BENCHMARK(BM_EvaluatePoint)->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State& state) {
  const SystemParams p = default_params();
  SweepSpec spec = default_sweep();
  spec.axis1.count = spec.axis2->count = static_cast<int>(state.range(0));
  SweepOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(p, spec, options));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * spec.size()));
}
BENCHMARK(BM_Sweep)->Args({21, 1})->Args({21, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

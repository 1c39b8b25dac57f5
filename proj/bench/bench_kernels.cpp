#include <benchmark/benchmark.h>

#include <random>

#include "uwr/field.hpp"
#include "uwr/serial.hpp"
#include "uwr/solver.hpp"
#include "uwr/window.hpp"

using namespace uwr;

namespace {

ScalarField noise(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScalarField f(n, n);
  for (double& v : f.data()) v = u(rng);
  return f;
}

template <auto Fn>
void scalar_kernel(benchmark::State& state) {
  const ScalarField f = noise(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f));
  state.SetItemsProcessed(state.iterations() * f.size());
}

template <auto Fn>
void window_kernel(benchmark::State& state) {
  const ScalarField f = noise(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f, 7));
  state.SetItemsProcessed(state.iterations() * f.size());
}

template <auto Fn>
void divergence_kernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VectorField v(noise(n, 3), noise(n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(v));
  state.SetItemsProcessed(state.iterations() * v.x.size());
}

void solve_channel_bench(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScalarField I = noise(n, 5), L(n, n, 0.8), t(n, n, 0.7);
  SolverParams p;
  p.max_iters = 5;
  for (auto _ : state) benchmark::DoNotOptimize(solve_channel(I, L, t, p));
}

}  // namespace

BENCHMARK(scalar_kernel<&gradient>)->Name("gradient/omp")->Arg(512)->Arg(2048);
BENCHMARK(scalar_kernel<&serial::gradient>)->Name("gradient/serial")->Arg(512)->Arg(2048);
BENCHMARK(divergence_kernel<&divergence>)->Name("divergence/omp")->Arg(512)->Arg(2048);
BENCHMARK(divergence_kernel<&serial::divergence>)->Name("divergence/serial")->Arg(512)->Arg(2048);
BENCHMARK(scalar_kernel<&laplacian>)->Name("laplacian/omp")->Arg(512)->Arg(2048);
BENCHMARK(scalar_kernel<&serial::laplacian>)->Name("laplacian/serial")->Arg(512)->Arg(2048);
BENCHMARK(window_kernel<&box_mean>)->Name("box_mean/omp")->Arg(512)->Arg(2048);
BENCHMARK(window_kernel<&serial::box_mean>)->Name("box_mean/serial")->Arg(512)->Arg(2048);
BENCHMARK(window_kernel<&window_max>)->Name("window_max/omp")->Arg(512)->Arg(2048);
BENCHMARK(window_kernel<&serial::window_max>)->Name("window_max/serial")->Arg(512)->Arg(2048);
BENCHMARK(window_kernel<&window_min>)->Name("window_min/omp")->Arg(512)->Arg(2048);
BENCHMARK(window_kernel<&serial::window_min>)->Name("window_min/serial")->Arg(512)->Arg(2048);
BENCHMARK(solve_channel_bench)->Name("solve_channel/5iters")->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

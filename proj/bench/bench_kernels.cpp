// Serial reference kernels against their OpenMP counterparts, plus the dense solvers.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "floquet_ssh/floquet.hpp"
#include "floquet_ssh/linalg.hpp"
#include "floquet_ssh/sweep.hpp"

using namespace fssh;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = {dist(gen), dist(gen)};
  return m;
}

SweepSpec phi_sweep(int points) {
  SweepSpec spec;
  spec.base.gamma = 0.2;
  spec.solver.method = Method::Static;
  spec.axes = {{"phi", {}}};
  for (int i = 0; i < points; ++i)
    spec.axes[0].values.push_back(2.0 * std::numbers::pi * i / (points - 1));
  return spec;
}

void BM_MatmulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul_serial(a, b));
}

void BM_MatmulParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = phi_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = phi_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

void BM_EigDense(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(eig_dense(m));
}

void BM_Expm(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}

void BM_PropagatorSpectrum(benchmark::State& state) {
  ModelParams p;
  p.gamma = 0.2;
  p.phi_dim = 0.3;
  p.omega = 0.8 * std::numbers::pi;
  p.kappa = 0.05 / p.omega;
  for (auto _ : state) benchmark::DoNotOptimize(quasi_energies_propagator(p, 1024));
}

}  // namespace

BENCHMARK(BM_MatmulSerial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_MatmulParallel)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_SweepSerial)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigDense)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expm)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PropagatorSpectrum)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

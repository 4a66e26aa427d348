#include <benchmark/benchmark.h>

#include "tracelimits/limit_constants.hpp"
#include "tracelimits/matrix_sim.hpp"
#include "tracelimits/pairings.hpp"
#include "tracelimits/scalar_sim.hpp"
#include "tracelimits/trace_poly.hpp"

using namespace tracelimits;

static void BM_InhomogeneousPairings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  const Permutation0 alpha = Permutation0::full_cycle(n * k);
  for (auto _ : state) {
    long total = 0;
    for_each_inhomogeneous_pairing(n, k, [&](const std::vector<int>& p) { total += cyc0_of_product(p, alpha); });
    benchmark::DoNotOptimize(total);
  }
  state.counters["pairings"] = static_cast<double>(count_inhomogeneous_pairings(n, k));
}
BENCHMARK(BM_InhomogeneousPairings)->Args({2, 4})->Args({3, 4})->Args({2, 6})->Unit(benchmark::kMillisecond);

static void BM_MomentConstant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(moment_constant(static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_MomentConstant)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_HermiteExpansion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hermite_trace_polynomial(n, Permutation0::full_cycle(n)));
}
BENCHMARK(BM_HermiteExpansion)->DenseRange(2, 6, 2);

static void BM_CompiledHermite(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto poly = hermite_trace_polynomial(4, Permutation0::full_cycle(4));
  CompiledTracePolynomial h(poly, 1.0, N);
  NormalStream rng(1);
  std::vector<double> ch(static_cast<std::size_t>(N * N));
  for (auto& c : ch) c = rng();
  const Matrix M = assemble_hermitian(N, ch.data());
  for (auto _ : state) benchmark::DoNotOptimize(h(M));
}
BENCHMARK(BM_CompiledHermite)->Arg(2)->Arg(8)->Arg(32);

static void BM_ScalarMollify(benchmark::State& state) {
  const Kernel k = make_indicator_kernel(0.01);
  const double eps = 1e-3, dt = 1e-5;
  const ScalarPath p = simulate_for_unit_interval(k, eps, dt, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mollify(p, k, eps));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.increments.size()));
}
BENCHMARK(BM_ScalarMollify)->Unit(benchmark::kMillisecond);

static void BM_HermitianStream(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Kernel k = make_indicator_kernel(0.01);
  HermitianMollifiedStream s(N, k, 1e-2, 1e-4, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next());
}
BENCHMARK(BM_HermitianStream)->Arg(2)->Arg(16)->Arg(64);
BENCHMARK_MAIN();

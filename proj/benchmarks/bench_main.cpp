#include <benchmark/benchmark.h>

#include "geomax/analysis.hpp"
#include "geomax/ascent.hpp"
#include "geomax/canonicalize.hpp"
#include "geomax/closest_product.hpp"
#include "geomax/state.hpp"

using namespace geomax;

namespace {

SystemShape qubits(benchmark::State& st) { return SystemShape::uniform(static_cast<int>(st.range(0)), 2); }

void BM_SeesawSweep(benchmark::State& st) {
  const SystemShape shape = qubits(st);
  const PureState psi = random_pure_state(shape, 1);
  ProductState pi = random_product_state(shape, 2);
  for (auto _ : st) {
    pi = seesaw_sweep(psi, pi);
    benchmark::DoNotOptimize(pi);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(shape.total_dim()));
}
BENCHMARK(BM_SeesawSweep)->DenseRange(3, 12, 3);

void BM_BestProductApproximation(benchmark::State& st) {
  const SystemShape shape = qubits(st);
  const PureState psi = random_pure_state(shape, 1);
  const SeesawConfig cfg = SeesawConfig::defaults_for(shape);
  for (auto _ : st) benchmark::DoNotOptimize(best_product_approximation(psi, cfg).lambda);
}
BENCHMARK(BM_BestProductApproximation)->DenseRange(3, 9, 2)->Unit(benchmark::kMillisecond);

void BM_AscendStep(benchmark::State& st) {
  const SystemShape shape = qubits(st);
  const PureState psi = random_pure_state(shape, 1);
  const ProductState pi = best_product_approximation(psi, SeesawConfig::defaults_for(shape)).pi;
  for (auto _ : st) benchmark::DoNotOptimize(ascend_step(psi, pi, 0.01, DirectionMode::normalized));
}
BENCHMARK(BM_AscendStep)->DenseRange(3, 12, 3);

void BM_JarlskogUnitary(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const JarlskogParams p = JarlskogParams::random(d, 3);
  for (auto _ : st) benchmark::DoNotOptimize(jarlskog_unitary(p));
}
BENCHMARK(BM_JarlskogUnitary)->RangeMultiplier(2)->Range(2, 16);

void BM_MarginalSpectra(benchmark::State& st) {
  const SystemShape shape = qubits(st);
  const PureState psi = random_pure_state(shape, 1);
  const int k = shape.parties() / 2;
  for (auto _ : st) benchmark::DoNotOptimize(marginal_spectra(psi, k));
}
BENCHMARK(BM_MarginalSpectra)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <numbers>

#include "lpmhd/fft.hpp"
#include "lpmhd/littlewood_paley.hpp"
#include "lpmhd/paraproduct.hpp"
#include "lpmhd/random_fields.hpp"
#include "lpmhd/spectral.hpp"

using namespace lpmhd;

namespace {

FrequencyGrid grid_for(const benchmark::State& state) {
  return make_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                   2.0 * std::numbers::pi);
}

void BM_ForwardInverseFft(benchmark::State& state) {
  const auto g = grid_for(state);
  Rng rng(0);
  const Field f = random_band_limited(g, 1, 1.0, 8.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(to_physical(to_spectral(f)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_ForwardInverseFft)->Args({2, 64})->Args({2, 256})->Args({3, 32})->Args({3, 64});

void BM_AllBlocks(benchmark::State& state) {
  const auto g = grid_for(state);
  const auto bank = FilterBank::for_grid(g);
  Rng rng(1);
  const SpectralField F = to_spectral(random_band_limited(g, 1, 1.0, 8.0, rng));
  for (auto _ : state) {
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) benchmark::DoNotOptimize(bank.block(j, F));
  }
}
BENCHMARK(BM_AllBlocks)->Args({2, 64})->Args({3, 32});

void BM_BesovNorm(benchmark::State& state) {
  const auto g = grid_for(state);
  const auto bank = FilterBank::for_grid(g);
  Rng rng(2);
  const Field f = random_band_limited(g, 2, 1.0, 8.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, {1.0, 2.0, 1.0, {}}, bank));
}
BENCHMARK(BM_BesovNorm)->Args({2, 64})->Args({3, 32});

void BM_BonyDecomposition(benchmark::State& state) {
  const auto g = grid_for(state);
  const auto bank = FilterBank::for_grid(g);
  Rng rng(3);
  const Field u = random_band_limited(g, 1, 1.0, 8.0, rng);
  const Field v = random_band_limited(g, 1, 1.0, 8.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bony_decompose(bank, u, v));
}
BENCHMARK(BM_BonyDecomposition)->Args({2, 64})->Args({3, 32});

void BM_DealiasedProduct(benchmark::State& state) {
  const auto g = grid_for(state);
  Rng rng(4);
  const Field u = random_band_limited(g, 1, 1.0, 8.0, rng);
  const Field v = random_band_limited(g, 1, 1.0, 8.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dealiased_product(u, v));
}
BENCHMARK(BM_DealiasedProduct)->Args({2, 64})->Args({3, 32});

void BM_LerayProjection(benchmark::State& state) {
  const auto g = grid_for(state);
  Rng rng(5);
  const Field f = random_band_limited(g, g.dim(), 1.0, 8.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(leray_project(f));
}
BENCHMARK(BM_LerayProjection)->Args({2, 64})->Args({3, 32});

void BM_TensorDivergence(benchmark::State& state) {
  const auto g = grid_for(state);
  Rng rng(6);
  const Field u = random_divergence_free(g, 1.0, 8.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_divergence(u, u));
}
BENCHMARK(BM_TensorDivergence)->Args({2, 64})->Args({3, 32});

}  // namespace
BENCHMARK_MAIN();

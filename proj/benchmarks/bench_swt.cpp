#include <benchmark/benchmark.h>

#include <random>

#include "wavefg/swt.hpp"

namespace {

wavefg::GrayFrame noise_frame(int side) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(side) * side);
  for (auto& x : v) x = uni(rng);
  return wavefg::GrayFrame(side, side, std::move(v));
}

void BM_Decompose(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const int levels = static_cast<int>(state.range(1));
  const wavefg::GrayFrame f = noise_frame(side);
  for (auto _ : state) benchmark::DoNotOptimize(wavefg::decompose(f, levels));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Decompose)->Args({192, 4})->Args({192, 7})->Args({512, 4})->Unit(benchmark::kMillisecond);

void BM_BandSigma(benchmark::State& state) {
  const wavefg::GrayFrame f = noise_frame(512);
  for (auto _ : state) benchmark::DoNotOptimize(wavefg::band_sigma(f.plane()));
}
BENCHMARK(BM_BandSigma);

}  // namespace

BENCHMARK_MAIN();

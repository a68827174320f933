#include <benchmark/benchmark.h>

#include <random>

#include "wavefg/decisions.hpp"
#include "wavefg/lbp.hpp"

namespace {

wavefg::CoefficientPlane noise_plane(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  wavefg::CoefficientPlane p(side, side);
  for (auto& x : p.values()) x = n(rng);
  return p;
}

void BM_LbpCodes(benchmark::State& state) {
  const auto p = noise_plane(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(wavefg::lbp_codes(p));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.size()));
}
BENCHMARK(BM_LbpCodes)->Arg(192)->Arg(512);

// Cost should be flat in the radius.
void BM_HistogramField(benchmark::State& state) {
  const auto codes = wavefg::lbp_codes(noise_plane(192, 2));
  wavefg::LbpHistogramField field;
  for (auto _ : state) {
    wavefg::histogram_field(codes, static_cast<int>(state.range(0)), field);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(codes.size()));
}
BENCHMARK(BM_HistogramField)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_TextureDifference(benchmark::State& state) {
  const auto a = wavefg::histogram_field(wavefg::lbp_codes(noise_plane(192, 3)), 8);
  const auto b = wavefg::histogram_field(wavefg::lbp_codes(noise_plane(192, 4)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(wavefg::texture_difference(a, b));
}
BENCHMARK(BM_TextureDifference)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "wavefg/pipeline.hpp"
#include "wavefg/synth.hpp"

namespace {

// Per-frame cost on the 192x192 camouflage scene, after burn-in.
void BM_ProcessFrame(benchmark::State& state) {
  wavefg::SynthScenario s = wavefg::camouflage_grating_scenario();
  s.frames = 64;
  const wavefg::SynthSequence seq = wavefg::generate(s);
  wavefg::DetectorConfig config;
  config.levels = static_cast<int>(state.range(0));
  config.threads = static_cast<int>(state.range(1));
  config.burnin_frames = 4;
  wavefg::ForegroundDetector detector(config, s.width, s.height);
  for (int t = 0; t < 4; ++t) detector.process_frame(seq.frames[static_cast<std::size_t>(t)]);
  std::size_t t = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detector.process_frame(seq.frames[t]));
    t = t + 1 < seq.frames.size() ? t + 1 : 4;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ProcessFrame)->Args({4, 1})->Args({7, 1})->Args({4, 4})->Unit(benchmark::kMillisecond);

void BM_IntensityBaseline(benchmark::State& state) {
  wavefg::SynthScenario s = wavefg::camouflage_grating_scenario();
  s.frames = 64;
  const wavefg::SynthSequence seq = wavefg::generate(s);
  wavefg::IntensityGmmDetector detector(wavefg::DetectorConfig{}, s.width, s.height);
  std::size_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detector.process_frame(seq.frames[t]));
    t = (t + 1) % seq.frames.size();
  }
}
BENCHMARK(BM_IntensityBaseline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

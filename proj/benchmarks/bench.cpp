#include <benchmark/benchmark.h>

#include <vector>

#include "tstretch/eval.hpp"
#include "tstretch/gabor.hpp"
#include "tstretch/nsgf.hpp"
#include "tstretch/nspv.hpp"
#include "tstretch/onsets.hpp"
#include "tstretch/pv.hpp"
#include "tstretch/rng.hpp"
#include "tstretch/scale_frames.hpp"
#include "tstretch/window.hpp"

namespace {

std::vector<double> noise(std::size_t len, std::uint64_t seed) {
  tstretch::Rng rng(seed);
  std::vector<double> f(len);
  for (double& x : f) x = rng.range(-1.0, 1.0);
  return f;
}

const tstretch::Signal& melody() {
  static const tstretch::Signal s = tstretch::synth_melody(tstretch::MelodySpec::random(42));
  return s;
}

void bm_dgt_round_trip(benchmark::State& state) {
  const std::size_t L = 1 << 16;
  const auto f = noise(L, 1);
  const tstretch::GaborFrame frame(tstretch::hann_window(1024), 256, 1024, L);
  const auto dual = tstretch::painless_dual_window(frame);
  for (auto _ : state) {
    const auto c = tstretch::dgt_analyze(f, frame);
    benchmark::DoNotOptimize(tstretch::dgt_synthesize(c, frame.hop, dual));
  }
  state.SetItemsProcessed(state.iterations() * L);
}
BENCHMARK(bm_dgt_round_trip);

void bm_nsgt_round_trip(benchmark::State& state) {
  const auto& s = melody();
  const auto onsets = tstretch::detect_onsets(s.samples, tstretch::SfConfig{});
  const auto seq =
      tstretch::build_window_sequence(onsets.onsets, s.samples.size(), tstretch::ScaleFrameConfig{});
  const auto sys = tstretch::make_system(seq);
  for (auto _ : state) {
    const auto c = tstretch::nsgt_analyze(s.samples, sys);
    benchmark::DoNotOptimize(tstretch::nsgt_synthesize(c, sys));
  }
  state.SetItemsProcessed(state.iterations() * s.samples.size());
}
BENCHMARK(bm_nsgt_round_trip);

void bm_spectral_flux(benchmark::State& state) {
  const auto& s = melody();
  for (auto _ : state)
    benchmark::DoNotOptimize(tstretch::spectral_flux(s.samples, tstretch::SfConfig{}));
  state.SetItemsProcessed(state.iterations() * s.samples.size());
}
BENCHMARK(bm_spectral_flux);

void bm_pv_stretch(benchmark::State& state) {
  const auto& s = melody();
  for (auto _ : state)
    benchmark::DoNotOptimize(tstretch::pv_stretch(s.samples, 1.5, tstretch::PvConfig{}));
  state.SetItemsProcessed(state.iterations() * s.samples.size());
}
BENCHMARK(bm_pv_stretch);

void bm_nspv_stretch(benchmark::State& state) {
  const auto& s = melody();
  for (auto _ : state)
    benchmark::DoNotOptimize(tstretch::nspv_stretch(s.samples, 1.5, tstretch::NspvConfig{}));
  state.SetItemsProcessed(state.iterations() * s.samples.size());
}
BENCHMARK(bm_nspv_stretch);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "fcprobe/analysis.hpp"
#include "fcprobe/fixture.hpp"

using namespace fcprobe;

namespace {

const GeneratorParams& model() {
  static const GeneratorParams p = make_fixture(default_fixture_spec(1));
  return p;
}

FeatureMap random_map(std::size_t channels, std::size_t width) {
  SplitMix64 rng(5);
  FeatureMap fm(channels, width);
  for (auto& v : fm.data()) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  return fm;
}

void BM_FcForward(benchmark::State& state) {
  const auto& p = model();
  std::vector<float> z(p.arch.latent_dim(), 0.5f);
  for (auto _ : state) benchmark::DoNotOptimize(fc_forward(z, p));
}
BENCHMARK(BM_FcForward)->Unit(benchmark::kMicrosecond);

// First layer of the default stack: 1024 -> 512 channels.
void BM_ConvTranspose(benchmark::State& state) {
  const auto& p = model();
  const auto fm = random_map(1024, static_cast<std::size_t>(state.range(0)));
  const auto& layer = p.arch.conv_layers[0];
  for (auto _ : state) benchmark::DoNotOptimize(conv_transpose_1d(fm, layer, p.conv[0].kernel, p.conv[0].bias));
}
BENCHMARK(BM_ConvTranspose)->Arg(1)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GenerateFromFeatureMap(benchmark::State& state) {
  const auto& p = model();
  const auto fm = random_map(1024, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(generate_from_featuremap(fm, p));
}
BENCHMARK(BM_GenerateFromFeatureMap)->Arg(1)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Spectrogram(benchmark::State& state) {
  Waveform w;
  w.sample_rate = 16000;
  for (int n = 0; n < 16384; ++n) w.samples.push_back(static_cast<float>(std::sin(2 * std::numbers::pi * 440.0 * n / 16000)));
  for (auto _ : state) benchmark::DoNotOptimize(averaged_spectrum(spectrogram(w)));
}
BENCHMARK(BM_Spectrogram)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

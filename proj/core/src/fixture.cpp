#include "fcprobe/fixture.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fcprobe {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

FixtureSpec default_fixture_spec(std::uint64_t seed) {
  FixtureSpec spec;
  spec.seed = seed;
  spec.arch = ciwgan_timit_9();
  spec.prototypes = {{"low", 300.0, 2.0}, {"high", 2500.0, 2.0}};
  return spec;
}

std::size_t fixture_prototype_of(std::size_t code, std::size_t t, std::size_t n_prototypes) {
  return (code + t) % n_prototypes;
}

GeneratorParams make_fixture(const FixtureSpec& spec) {
  const auto& arch = spec.arch;
  arch.validate();
  const double nyquist = arch.sample_rate / 2.0;
  for (const auto& p : spec.prototypes) {
    if (!(p.freq_hz >= 0.0) || p.freq_hz >= nyquist) {
      throw ValidationError("prototype \"" + p.label + "\" frequency " + std::to_string(p.freq_hz) +
                            " Hz is not below Nyquist (" + std::to_string(nyquist) + " Hz)");
    }
    if (!std::isfinite(p.decay)) throw ValidationError("prototype \"" + p.label + "\" decay is not finite");
  }

  SplitMix64 rng(spec.seed);
  const std::size_t C = arch.fc_channels;
  const std::size_t T = arch.fc_timesteps;
  const std::size_t n = arch.fc_size();
  const std::size_t P = spec.prototypes.size();

  GeneratorParams params;
  params.arch = arch;
  params.fc_weight.resize(arch.latent_dim() * n);

  for (std::size_t v = 0; v < arch.n_codes; ++v) {
    float* row = params.fc_weight.data() + v * n;
    for (std::size_t t = 0; t < T; ++t) {
      const double envelope = (T == 1 || t < T / 2) ? 1.0 : 0.25;
      for (std::size_t c = 0; c < C; ++c) {
        double value;
        if (P == 0) {
          value = rng.uniform(-1.0, 1.0);
        } else {
          const auto& proto = spec.prototypes[fixture_prototype_of(v, t, P)];
          const double x = static_cast<double>(c);
          value = std::exp(-proto.decay * x / static_cast<double>(C)) *
                      std::sin(2.0 * std::numbers::pi * proto.freq_hz * x / arch.sample_rate) +
                  0.05 * rng.uniform(-1.0, 1.0);
        }
        row[t * C + c] = static_cast<float>(envelope * value);
      }
    }
  }
  for (std::size_t k = arch.n_codes * n; k < params.fc_weight.size(); ++k) {
    params.fc_weight[k] = static_cast<float>(rng.uniform(-0.1, 0.1));
  }
  params.fc_bias.resize(n);
  for (auto& b : params.fc_bias) b = static_cast<float>(rng.uniform(-0.01, 0.01));

  for (const auto& l : arch.conv_layers) {
    // Each output sample sees about in_channels * kernel_len / stride taps.
    const double fan_in = static_cast<double>(l.in_channels * l.kernel_len) / l.stride;
    const double limit = std::sqrt(3.0) * std::sqrt(2.0 / fan_in);
    ConvLayerParams cp;
    cp.kernel.resize(l.in_channels * l.out_channels * l.kernel_len);
    for (auto& k : cp.kernel) k = static_cast<float>(rng.uniform(-limit, limit));
    cp.bias.resize(l.out_channels);
    for (auto& b : cp.bias) b = static_cast<float>(rng.uniform(-0.01, 0.01));
    params.conv.push_back(std::move(cp));
  }
  return params;
}

}  // namespace fcprobe

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fcprobe/architecture.hpp"
#include "fcprobe/errors.hpp"
#include "fcprobe/feature_map.hpp"

namespace fcprobe {

struct ConvLayerParams {
  // [in_channels x out_channels x kernel_len], row-major.
  std::vector<float> kernel;
  // [out_channels]
  std::vector<float> bias;

  friend bool operator==(const ConvLayerParams&, const ConvLayerParams&) = default;
};

// Trained generator weights. Immutable after construction in normal use; every
// operation below takes it by const reference and is safe to call from many
// threads at once.
struct GeneratorParams {
  ArchitectureSpec arch;
  // [latent_dim x (C*T)], row-major. Row i is variable i's weight matrix in
  // flat time-major order (flat index k -> channel k % C, time k / C).
  std::vector<float> fc_weight;
  // [C*T], time-major flat order.
  std::vector<float> fc_bias;
  std::vector<ConvLayerParams> conv;

  std::span<const float> fc_row(std::size_t row) const {
    const std::size_t n = arch.fc_size();
    return {fc_weight.data() + row * n, n};
  }

  // Checks every shape against arch and that all values are finite.
  void validate() const;

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct LatentVector {
  std::vector<float> code;
  std::vector<float> noise;

  // Codes first, then noise.
  std::vector<float> concatenated() const;
};

struct Waveform {
  std::vector<float> samples;
  std::uint32_t sample_rate = 16000;

  friend bool operator==(const Waveform&, const Waveform&) = default;
};

// Flat index k maps to (channel k % C, time k / C).
FeatureMap reshape_flat_to_featuremap(std::span<const float> flat, const ArchitectureSpec& arch);
std::vector<float> flatten_featuremap(const FeatureMap& fm);

// bias + sum_i z_i * W_i in flat order, accumulated in T. Rows are added in
// ascending order starting from the bias.
template <typename T, typename Z>
std::vector<T> fc_project(std::span<const Z> z, const GeneratorParams& params) {
  const std::size_t d = params.arch.latent_dim();
  const std::size_t n = params.arch.fc_size();
  if (z.size() != d) {
    throw ShapeError("latent vector has " + std::to_string(z.size()) + " values, expected " +
                     std::to_string(d));
  }
  std::vector<T> out(params.fc_bias.begin(), params.fc_bias.end());
  for (std::size_t i = 0; i < d; ++i) {
    const T zi = static_cast<T>(z[i]);
    const float* w = params.fc_weight.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      out[k] += zi * static_cast<T>(w[k]);
    }
  }
  return out;
}

// FC projection reshaped to a feature map. No activation is applied.
FeatureMap fc_forward(std::span<const float> z, const GeneratorParams& params);
FeatureMap fc_forward(const LatentVector& z, const GeneratorParams& params);

// Transposed 1-D convolution with output length stride * input length.
// The full convolution (length (L-1)*stride + kernel_len) is cropped by
// floor((kernel_len - stride) / 2) leading and the remainder trailing samples,
// then the per-channel bias and the layer activation are applied.
FeatureMap conv_transpose_1d(const FeatureMap& input, const ConvLayerSpec& layer,
                             std::span<const float> kernel, std::span<const float> bias);

// Runs an arbitrary-width C x W map through the conv stack. The result has
// W * upsample_factor() samples.
Waveform generate_from_featuremap(const FeatureMap& fm, const GeneratorParams& params);

Waveform generate_from_latent(std::span<const float> z, const GeneratorParams& params);
Waveform generate_from_latent(const LatentVector& z, const GeneratorParams& params);

}  // namespace fcprobe

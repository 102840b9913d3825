#include "fcprobe/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fcprobe {

namespace {

void check_finite(std::span<const float> values, const std::string& what) {
  for (float v : values) {
    if (!std::isfinite(v)) throw ValidationError(what + " contains a non-finite value");
  }
}

void check_size(std::size_t actual, std::size_t expected, const std::string& what) {
  if (actual != expected) {
    throw ShapeError(what + " has " + std::to_string(actual) + " values, expected " +
                     std::to_string(expected));
  }
}

void apply_activation(std::span<float> values, Activation a) {
  switch (a) {
    case Activation::none:
      break;
    case Activation::relu:
      for (float& v : values) v = v > 0.0f ? v : 0.0f;
      break;
    case Activation::tanh:
      for (float& v : values) v = std::tanh(v);
      break;
  }
}

}  // namespace

void GeneratorParams::validate() const {
  arch.validate();
  check_size(fc_weight.size(), arch.latent_dim() * arch.fc_size(), "fc.weight");
  check_size(fc_bias.size(), arch.fc_size(), "fc.bias");
  check_finite(fc_weight, "fc.weight");
  check_finite(fc_bias, "fc.bias");
  check_size(conv.size(), arch.conv_layers.size(), "conv layer list");
  for (std::size_t i = 0; i < conv.size(); ++i) {
    const auto& l = arch.conv_layers[i];
    const std::string name = "conv" + std::to_string(i);
    check_size(conv[i].kernel.size(), l.in_channels * l.out_channels * l.kernel_len,
               name + ".kernel");
    check_size(conv[i].bias.size(), l.out_channels, name + ".bias");
    check_finite(conv[i].kernel, name + ".kernel");
    check_finite(conv[i].bias, name + ".bias");
  }
}

std::vector<float> LatentVector::concatenated() const {
  std::vector<float> z;
  z.reserve(code.size() + noise.size());
  z.insert(z.end(), code.begin(), code.end());
  z.insert(z.end(), noise.begin(), noise.end());
  return z;
}

FeatureMap reshape_flat_to_featuremap(std::span<const float> flat, const ArchitectureSpec& arch) {
  const std::size_t C = arch.fc_channels;
  const std::size_t T = arch.fc_timesteps;
  if (flat.size() != C * T) {
    throw ShapeError("flat vector has " + std::to_string(flat.size()) + " values, expected " +
                     std::to_string(C) + "x" + std::to_string(T));
  }
  FeatureMap fm(C, T);
  for (std::size_t k = 0; k < flat.size(); ++k) fm.at(k % C, k / C) = flat[k];
  return fm;
}

std::vector<float> flatten_featuremap(const FeatureMap& fm) {
  const std::size_t C = fm.channels();
  std::vector<float> flat(fm.size());
  for (std::size_t k = 0; k < flat.size(); ++k) flat[k] = fm.at(k % C, k / C);
  return flat;
}

FeatureMap fc_forward(std::span<const float> z, const GeneratorParams& params) {
  const auto flat = fc_project<float>(z, params);
  return reshape_flat_to_featuremap(flat, params.arch);
}

FeatureMap fc_forward(const LatentVector& z, const GeneratorParams& params) {
  check_size(z.code.size(), params.arch.n_codes, "latent code");
  check_size(z.noise.size(), params.arch.n_noise, "latent noise");
  const auto flat = z.concatenated();
  return fc_forward(std::span<const float>(flat), params);
}

FeatureMap conv_transpose_1d(const FeatureMap& input, const ConvLayerSpec& layer,
                             std::span<const float> kernel, std::span<const float> bias) {
  if (input.channels() != layer.in_channels) {
    throw ShapeError("conv input has " + std::to_string(input.channels()) +
                     " channels, layer expects " + std::to_string(layer.in_channels));
  }
  if (layer.stride < 1 || layer.kernel_len < layer.stride) {
    throw ValidationError("transposed conv requires kernel_len >= stride >= 1");
  }
  const std::size_t in_ch = layer.in_channels;
  const std::size_t out_ch = layer.out_channels;
  const std::size_t klen = layer.kernel_len;
  const std::size_t stride = layer.stride;
  check_size(kernel.size(), in_ch * out_ch * klen, "conv kernel");
  check_size(bias.size(), out_ch, "conv bias");

  const std::size_t in_len = input.timesteps();
  const std::size_t out_len = in_len * stride;
  const std::size_t row = out_ch * klen;

  // contrib[i][o][k] = sum_c x[c][i] * kernel[c][o][k], summed over c in
  // ascending order. Zero inputs contribute nothing and are skipped.
  std::vector<float> contrib(in_len * row, 0.0f);
  for (std::size_t c = 0; c < in_ch; ++c) {
    const float* krow = kernel.data() + c * row;
    const auto x = input.row(c);
    for (std::size_t i = 0; i < in_len; ++i) {
      const float a = x[i];
      if (a == 0.0f) continue;
      float* dst = contrib.data() + i * row;
      for (std::size_t j = 0; j < row; ++j) dst[j] += a * krow[j];
    }
  }

  // Overlap-add: input position i, tap k lands on full-output position
  // i * stride + k, which is output position i * stride + k - crop_left.
  FeatureMap out(out_ch, out_len);
  const std::ptrdiff_t crop = static_cast<std::ptrdiff_t>(layer.crop_left());
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(out_len);
  for (std::size_t o = 0; o < out_ch; ++o) {
    auto y = out.row(o);
    for (std::size_t i = 0; i < in_len; ++i) {
      const float* src = contrib.data() + i * row + o * klen;
      const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(i * stride) - crop;
      const std::ptrdiff_t k0 = std::max<std::ptrdiff_t>(0, -base);
      const std::ptrdiff_t k1 = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(klen), len - base);
      for (std::ptrdiff_t k = k0; k < k1; ++k) y[base + k] += src[k];
    }
    const float b = bias[o];
    for (float& v : y) v += b;
    apply_activation(y, layer.activation);
  }
  return out;
}

Waveform generate_from_featuremap(const FeatureMap& fm, const GeneratorParams& params) {
  const auto& arch = params.arch;
  if (fm.channels() != arch.fc_channels) {
    throw ShapeError("feature map has " + std::to_string(fm.channels()) +
                     " channels, model expects " + std::to_string(arch.fc_channels));
  }
  if (fm.timesteps() < 1) throw ShapeError("feature map must have at least one time step");
  FeatureMap x = fm;
  for (std::size_t i = 0; i < arch.conv_layers.size(); ++i) {
    x = conv_transpose_1d(x, arch.conv_layers[i], params.conv[i].kernel, params.conv[i].bias);
  }
  const auto samples = x.row(0);
  return Waveform{{samples.begin(), samples.end()}, arch.sample_rate};
}

Waveform generate_from_latent(std::span<const float> z, const GeneratorParams& params) {
  return generate_from_featuremap(fc_forward(z, params), params);
}

Waveform generate_from_latent(const LatentVector& z, const GeneratorParams& params) {
  return generate_from_featuremap(fc_forward(z, params), params);
}

}  // namespace fcprobe

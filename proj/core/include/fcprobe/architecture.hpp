#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fcprobe {

// Numeric values are the on-disk activation codes of the FCPW format.
enum class Activation : std::uint32_t { none = 0, relu = 1, tanh = 2 };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

struct ConvLayerSpec {
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t kernel_len = 0;
  std::size_t stride = 1;
  Activation activation = Activation::none;

  std::size_t crop_left() const { return (kernel_len - stride) / 2; }
  std::size_t crop_right() const { return kernel_len - stride - crop_left(); }

  friend bool operator==(const ConvLayerSpec&, const ConvLayerSpec&) = default;
};

// Shape of a latent-to-waveform generator: an FC projection of
// latent_dim = n_codes + n_noise values to a C x T feature map, followed by a
// chain of transposed convolutions ending in one output channel.
struct ArchitectureSpec {
  std::size_t n_codes = 0;
  std::size_t n_noise = 0;
  std::size_t fc_channels = 0;
  std::size_t fc_timesteps = 0;
  std::vector<ConvLayerSpec> conv_layers;
  std::uint32_t sample_rate = 16000;

  std::size_t latent_dim() const { return n_codes + n_noise; }
  std::size_t fc_size() const { return fc_channels * fc_timesteps; }
  // Product of strides: output samples per feature-map column.
  std::size_t upsample_factor() const;
  std::size_t output_length(std::size_t timesteps) const {
    return timesteps * upsample_factor();
  }

  // Throws ValidationError describing the first violated invariant.
  void validate() const;

  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

// WaveGAN-style ciwGAN generator: 9 codes + 91 noise, 1024x16 feature map,
// five stride-4 kernel-25 layers 1024->512->256->128->64->1, 16 kHz.
ArchitectureSpec ciwgan_timit_9();

// Returns the named preset or throws ValidationError.
ArchitectureSpec architecture_preset(std::string_view name);

}  // namespace fcprobe

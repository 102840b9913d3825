#include "fcprobe/architecture.hpp"

#include <string>

#include "fcprobe/errors.hpp"

namespace fcprobe {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::none:
      return "none";
    case Activation::relu:
      return "relu";
    case Activation::tanh:
      return "tanh";
  }
  return "unknown";
}

Activation parse_activation(std::string_view name) {
  if (name == "none") return Activation::none;
  if (name == "relu") return Activation::relu;
  if (name == "tanh") return Activation::tanh;
  throw ValidationError("unknown activation \"" + std::string(name) + "\"");
}

std::size_t ArchitectureSpec::upsample_factor() const {
  std::size_t f = 1;
  for (const auto& l : conv_layers) f *= l.stride;
  return f;
}

void ArchitectureSpec::validate() const {
  if (n_codes < 1 || n_noise < 1 || fc_channels < 1 || fc_timesteps < 1) {
    throw ValidationError("architecture counts must all be >= 1");
  }
  if (sample_rate < 1) throw ValidationError("sample_rate must be >= 1");
  if (conv_layers.empty()) throw ValidationError("architecture needs at least one conv layer");
  std::size_t expected_in = fc_channels;
  for (std::size_t i = 0; i < conv_layers.size(); ++i) {
    const auto& l = conv_layers[i];
    const std::string where = "conv layer " + std::to_string(i) + ": ";
    if (l.in_channels != expected_in) {
      throw ValidationError(where + "in_channels " + std::to_string(l.in_channels) +
                            " does not chain from " + std::to_string(expected_in));
    }
    if (l.out_channels < 1) throw ValidationError(where + "out_channels must be >= 1");
    if (l.stride < 1 || l.kernel_len < l.stride) {
      throw ValidationError(where + "requires kernel_len >= stride >= 1");
    }
    expected_in = l.out_channels;
  }
  if (expected_in != 1) throw ValidationError("last conv layer must have one output channel");
}

ArchitectureSpec ciwgan_timit_9() {
  ArchitectureSpec a;
  a.n_codes = 9;
  a.n_noise = 91;
  a.fc_channels = 1024;
  a.fc_timesteps = 16;
  a.sample_rate = 16000;
  const std::size_t chans[] = {1024, 512, 256, 128, 64, 1};
  for (std::size_t i = 0; i < 5; ++i) {
    a.conv_layers.push_back({chans[i], chans[i + 1], 25, 4,
                             i == 4 ? Activation::tanh : Activation::relu});
  }
  return a;
}

ArchitectureSpec architecture_preset(std::string_view name) {
  if (name == "ciwgan-timit-9") return ciwgan_timit_9();
  throw ValidationError("unknown architecture preset \"" + std::string(name) + "\"");
}

}  // namespace fcprobe

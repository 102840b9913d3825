#pragma once

// Hand-rolled FCPW v1 encoder used to craft valid and deliberately broken
// files in tests. Follows the byte layout directly rather than reusing the
// library serializer.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "fcprobe/generator.hpp"
#include "fcprobe/model_io.hpp"

namespace fcprobe::testing {

class FcpwBuilder {
 public:
  FcpwBuilder& u8(std::uint8_t v) {
    bytes_.push_back(v);
    return *this;
  }
  FcpwBuilder& u16(std::uint16_t v) {
    bytes_.push_back(v & 0xFF);
    bytes_.push_back(v >> 8);
    return *this;
  }
  FcpwBuilder& u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back((v >> (8 * i)) & 0xFF);
    return *this;
  }
  FcpwBuilder& raw(const std::string& s) {
    bytes_.insert(bytes_.end(), s.begin(), s.end());
    return *this;
  }

  FcpwBuilder& header(const ArchitectureSpec& a) {
    raw("FCPW").u32(1);
    u32(a.n_codes).u32(a.n_noise).u32(a.fc_channels).u32(a.fc_timesteps).u32(a.sample_rate);
    u32(a.conv_layers.size());
    for (const auto& l : a.conv_layers) {
      u32(l.in_channels).u32(l.out_channels).u32(l.kernel_len).u32(l.stride);
      u32(static_cast<std::uint32_t>(l.activation));
    }
    return *this;
  }

  FcpwBuilder& tensor(const std::string& name, const std::vector<std::uint32_t>& dims,
                      const std::vector<float>& values) {
    u16(name.size()).raw(name).u8(dims.size());
    for (auto d : dims) u32(d);
    for (float v : values) u32(std::bit_cast<std::uint32_t>(v));
    return *this;
  }

  // Appends the CRC32 trailer and returns the finished file.
  std::vector<std::uint8_t> finish() {
    auto out = bytes_;
    const std::uint32_t crc = fcprobe::crc32(bytes_);
    for (int i = 0; i < 4; ++i) out.push_back((crc >> (8 * i)) & 0xFF);
    return out;
  }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Canonical encoding of p, tensors in the documented order.
inline std::vector<std::uint8_t> encode_by_hand(const GeneratorParams& p) {
  const auto& a = p.arch;
  FcpwBuilder b;
  b.header(a).u32(2 + 2 * a.conv_layers.size());
  b.tensor("fc.weight", {std::uint32_t(a.latent_dim()), std::uint32_t(a.fc_size())}, p.fc_weight);
  b.tensor("fc.bias", {std::uint32_t(a.fc_size())}, p.fc_bias);
  for (std::size_t i = 0; i < a.conv_layers.size(); ++i) {
    const auto& l = a.conv_layers[i];
    const std::string n = "conv" + std::to_string(i);
    b.tensor(n + ".kernel",
             {std::uint32_t(l.in_channels), std::uint32_t(l.out_channels), std::uint32_t(l.kernel_len)},
             p.conv[i].kernel);
    b.tensor(n + ".bias", {std::uint32_t(l.out_channels)}, p.conv[i].bias);
  }
  return b.finish();
}

}  // namespace fcprobe::testing

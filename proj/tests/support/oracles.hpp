#pragma once

// Test-only reference implementations. These are written from the
// definitions, never call into the code under test, and favour obviousness
// over speed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fcprobe/generator.hpp"

namespace fcprobe::testing {

// Brute-force transposed convolution: scatter every input sample through every
// kernel tap into the full-length output, then crop floor((k-s)/2) from the
// front and the remainder from the back. Computed in double.
inline std::vector<std::vector<double>> conv_transpose_oracle(
    const std::vector<std::vector<double>>& x, std::size_t out_ch, std::size_t klen,
    std::size_t stride, const std::vector<double>& kernel, const std::vector<double>& bias,
    Activation act) {
  const std::size_t in_ch = x.size();
  const std::size_t in_len = x.empty() ? 0 : x[0].size();
  const std::size_t full_len = (in_len - 1) * stride + klen;
  std::vector<std::vector<double>> full(out_ch, std::vector<double>(full_len, 0.0));
  for (std::size_t c = 0; c < in_ch; ++c)
    for (std::size_t i = 0; i < in_len; ++i)
      for (std::size_t o = 0; o < out_ch; ++o)
        for (std::size_t k = 0; k < klen; ++k)
          full[o][i * stride + k] += x[c][i] * kernel[(c * out_ch + o) * klen + k];

  const std::size_t crop_total = klen - stride;
  const std::size_t crop_front = crop_total / 2;
  const std::size_t out_len = full_len - crop_total;
  std::vector<std::vector<double>> out(out_ch, std::vector<double>(out_len));
  for (std::size_t o = 0; o < out_ch; ++o) {
    for (std::size_t p = 0; p < out_len; ++p) {
      double v = full[o][p + crop_front] + bias[o];
      if (act == Activation::relu) v = v > 0 ? v : 0;
      if (act == Activation::tanh) v = std::tanh(v);
      out[o][p] = v;
    }
  }
  return out;
}

// Naive matrix-vector product for the FC layer: out[k] = b[k] + sum_i z_i W[i][k].
inline std::vector<double> fc_oracle(const std::vector<double>& z, const GeneratorParams& p) {
  const std::size_t n = p.arch.fc_size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = p.fc_bias[k];
    for (std::size_t i = 0; i < z.size(); ++i) acc += z[i] * static_cast<double>(p.fc_weight[i * n + k]);
    out[k] = acc;
  }
  return out;
}

// |DFT| of a real sequence, bins 0..n/2.
inline std::vector<double> dft_magnitude(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> mag(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < n; ++t) {
      acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * double(k) * double(t) / double(n));
    }
    mag[k] = std::abs(acc);
  }
  return mag;
}

// Small architecture for fast unit tests: d = 2 + 2, C = 4, T = 3,
// 4 -(k5,s2,relu)-> 3 -(k4,s2,tanh)-> 1.
inline ArchitectureSpec tiny_arch() {
  ArchitectureSpec a;
  a.n_codes = 2;
  a.n_noise = 2;
  a.fc_channels = 4;
  a.fc_timesteps = 3;
  a.sample_rate = 8000;
  a.conv_layers = {{4, 3, 5, 2, Activation::relu}, {3, 1, 4, 2, Activation::tanh}};
  return a;
}

inline GeneratorParams random_params(const ArchitectureSpec& arch, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-0.5f, 0.5f);
  GeneratorParams p;
  p.arch = arch;
  p.fc_weight.resize(arch.latent_dim() * arch.fc_size());
  for (auto& w : p.fc_weight) w = u(rng);
  p.fc_bias.resize(arch.fc_size());
  for (auto& b : p.fc_bias) b = u(rng);
  for (const auto& l : arch.conv_layers) {
    ConvLayerParams cp;
    cp.kernel.resize(l.in_channels * l.out_channels * l.kernel_len);
    for (auto& k : cp.kernel) k = u(rng);
    cp.bias.resize(l.out_channels);
    for (auto& b : cp.bias) b = u(rng);
    p.conv.push_back(std::move(cp));
  }
  return p;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace fcprobe::testing

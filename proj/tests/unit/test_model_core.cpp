#include <doctest.h>

#include <random>

#include "fcprobe/generator.hpp"
#include "support/oracles.hpp"

using namespace fcprobe;
using fcprobe::testing::conv_transpose_oracle;
using fcprobe::testing::random_params;
using fcprobe::testing::tiny_arch;

namespace {

ArchitectureSpec arch_ct(std::size_t C, std::size_t T) {
  ArchitectureSpec a;
  a.n_codes = 2;
  a.n_noise = 2;
  a.fc_channels = C;
  a.fc_timesteps = T;
  a.conv_layers = {{C, 1, 4, 2, Activation::tanh}};
  return a;
}

}  // namespace

TEST_CASE("reshape is time-major") {
  const auto arch = arch_ct(2, 2);
  const std::vector<float> flat = {1, 2, 3, 4};
  const auto fm = reshape_flat_to_featuremap(flat, arch);
  CHECK(fm.column(0) == std::vector<float>{1, 2});
  CHECK(fm.column(1) == std::vector<float>{3, 4});
  CHECK(fm.at(1, 0) == 2);
}

TEST_CASE("reshape round-trips at 1024x16") {
  auto arch = ciwgan_timit_9();
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> u(-1, 1);
  std::vector<float> flat(arch.fc_size());
  for (auto& v : flat) v = u(rng);
  CHECK(flatten_featuremap(reshape_flat_to_featuremap(flat, arch)) == flat);
}

TEST_CASE("reshape rejects wrong length") {
  const std::vector<float> flat(5, 0.0f);
  CHECK_THROWS_AS(reshape_flat_to_featuremap(flat, arch_ct(2, 2)), ShapeError);
}

TEST_CASE("fc_forward of zero latent is the bias") {
  const auto p = random_params(tiny_arch(), 1);
  const std::vector<float> z(4, 0.0f);
  CHECK(fc_forward(z, p) == reshape_flat_to_featuremap(p.fc_bias, p.arch));
}

TEST_CASE("fc_forward of a unit vector selects one row") {
  const auto p = random_params(tiny_arch(), 2);
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<float> z(4, 0.0f);
    z[i] = 1.0f;
    const auto out = flatten_featuremap(fc_forward(z, p));
    for (std::size_t k = 0; k < out.size(); ++k) {
      CHECK(out[k] == doctest::Approx(p.fc_bias[k] + p.fc_row(i)[k]).epsilon(1e-6));
    }
  }
}

TEST_CASE("fc_forward matches naive matrix-vector oracle, d=4 C=2 T=2") {
  auto arch = arch_ct(2, 2);
  const auto p = random_params(arch, 9);
  std::mt19937 rng(4);
  std::uniform_real_distribution<float> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<float> z(4);
    for (auto& v : z) v = u(rng);
    const auto got = flatten_featuremap(fc_forward(z, p));
    const auto want = fcprobe::testing::fc_oracle({z.begin(), z.end()}, p);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::fabs(got[k] - want[k]) <= 1e-6);
  }
}

TEST_CASE("fc_forward rejects wrong latent size") {
  const auto p = random_params(tiny_arch(), 2);
  const std::vector<float> z(3, 0.0f);
  CHECK_THROWS_AS(fc_forward(z, p), ShapeError);
  LatentVector lv{{1.0f, 0.0f, 0.0f}, {0.0f, 0.0f}};
  CHECK_THROWS_AS(fc_forward(lv, p), ShapeError);
}

TEST_CASE("FC linearity property") {
  const auto p = random_params(tiny_arch(), 5);
  std::mt19937 rng(11);
  std::uniform_real_distribution<float> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> z1(4), z2(4), mix(4);
    for (auto& v : z1) v = u(rng);
    for (auto& v : z2) v = u(rng);
    const double a = u(rng), b = u(rng);
    for (int i = 0; i < 4; ++i) mix[i] = a * z1[i] + b * z2[i];
    const auto f = [&](const std::vector<double>& z) { return fc_project<double>(std::span<const double>(z), p); };
    const auto fm = f(mix), f1 = f(z1), f2 = f(z2);
    double worst = 0;
    for (std::size_t k = 0; k < fm.size(); ++k) {
      const double r = fm[k] - a * f1[k] - b * f2[k] + (a + b - 1) * p.fc_bias[k];
      worst = std::max(worst, std::fabs(r));
    }
    CHECK(worst <= 1e-9);

    std::vector<float> zf(mix.begin(), mix.end()), z1f(z1.begin(), z1.end()), z2f(z2.begin(), z2.end());
    const auto gm = flatten_featuremap(fc_forward(zf, p));
    const auto g1 = flatten_featuremap(fc_forward(z1f, p));
    const auto g2 = flatten_featuremap(fc_forward(z2f, p));
    worst = 0;
    for (std::size_t k = 0; k < gm.size(); ++k) {
      const double r = gm[k] - a * g1[k] - b * g2[k] + (a + b - 1) * p.fc_bias[k];
      worst = std::max(worst, std::fabs(r));
    }
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("conv_transpose_1d single tap picks the cropped kernel window") {
  ConvLayerSpec layer{1, 1, 25, 4, Activation::none};
  std::vector<float> kernel(25);
  for (int k = 0; k < 25; ++k) kernel[k] = static_cast<float>(k + 1);
  const std::vector<float> bias = {0.5f};
  FeatureMap in(1, 1, {1.0f});
  const auto out = conv_transpose_1d(in, layer, kernel, bias);
  REQUIRE(out.timesteps() == 4);
  for (int p = 0; p < 4; ++p) CHECK(out.at(0, p) == kernel[10 + p] + 0.5f);
}

TEST_CASE("conv_transpose_1d length contract") {
  ConvLayerSpec layer{1, 1, 25, 4, Activation::none};
  std::vector<float> kernel(25, 0.1f), bias(1, 0.0f);
  FeatureMap in(1, 3);
  CHECK(conv_transpose_1d(in, layer, kernel, bias).timesteps() == 12);
}

TEST_CASE("conv_transpose_1d errors") {
  std::vector<float> kernel(2 * 1 * 9, 0.0f), bias(1, 0.0f);
  FeatureMap in(3, 4);
  CHECK_THROWS_AS(conv_transpose_1d(in, {2, 1, 9, 4, Activation::none}, kernel, bias), ShapeError);
  FeatureMap in2(2, 4);
  std::vector<float> k3(2 * 3, 0.0f);
  CHECK_THROWS_AS(conv_transpose_1d(in2, {2, 1, 3, 4, Activation::none}, k3, bias), ValidationError);
}

TEST_CASE("conv_transpose_1d matches brute-force oracle on random instances") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<float> u(-1, 1);
  std::uniform_int_distribution<std::size_t> chans(1, 4), lens(1, 16), kidx(0, 2), sidx(1, 4);
  const std::size_t kernels[] = {5, 9, 25};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t in_ch = chans(rng), out_ch = chans(rng), len = lens(rng);
    const std::size_t klen = kernels[kidx(rng)];
    const std::size_t stride = std::min<std::size_t>(sidx(rng), klen);
    const auto act = static_cast<Activation>(trial % 3);
    ConvLayerSpec layer{in_ch, out_ch, klen, stride, act};

    FeatureMap in(in_ch, len);
    std::vector<std::vector<double>> xd(in_ch, std::vector<double>(len));
    for (std::size_t c = 0; c < in_ch; ++c)
      for (std::size_t i = 0; i < len; ++i) xd[c][i] = in.at(c, i) = u(rng);
    std::vector<float> kernel(in_ch * out_ch * klen), bias(out_ch);
    for (auto& k : kernel) k = u(rng);
    for (auto& b : bias) b = u(rng);

    const auto got = conv_transpose_1d(in, layer, kernel, bias);
    const auto want = conv_transpose_oracle(xd, out_ch, klen, stride, {kernel.begin(), kernel.end()},
                                            {bias.begin(), bias.end()}, act);
    REQUIRE(got.timesteps() == len * stride);
    double worst = 0;
    for (std::size_t o = 0; o < out_ch; ++o)
      for (std::size_t p = 0; p < got.timesteps(); ++p)
        worst = std::max(worst, std::fabs(got.at(o, p) - want[o][p]));
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("generate_from_featuremap length law and range") {
  const auto p = random_params(tiny_arch(), 7);
  std::mt19937 rng(1);
  std::uniform_real_distribution<float> u(-3, 3);
  for (std::size_t width = 1; width <= 32; ++width) {
    FeatureMap fm(4, width);
    for (auto& v : fm.data()) v = u(rng);
    const auto w = generate_from_featuremap(fm, p);
    CHECK(w.samples.size() == width * 4);
    CHECK(w.sample_rate == 8000);
    for (float s : w.samples) CHECK((s >= -1.0f && s <= 1.0f));
  }
}

TEST_CASE("zero feature map gives a deterministic constant-driven output") {
  const auto p = random_params(tiny_arch(), 8);
  const FeatureMap zero(4, 5);
  const auto a = generate_from_featuremap(zero, p);
  const auto b = generate_from_featuremap(zero, p);
  CHECK(a == b);
  // Only biases drive the output; interior samples are all equal.
  for (std::size_t i = 4; i + 4 < a.samples.size(); ++i) CHECK(a.samples[i] == a.samples[4]);
}

TEST_CASE("generate_from_featuremap rejects channel mismatch") {
  const auto p = random_params(tiny_arch(), 8);
  CHECK_THROWS_AS(generate_from_featuremap(FeatureMap(3, 2), p), ShapeError);
}

TEST_CASE("generate_from_latent composes fc_forward and the conv stack") {
  const auto p = random_params(tiny_arch(), 12);
  const std::vector<float> zero(4, 0.0f);
  CHECK(generate_from_latent(zero, p) ==
        generate_from_featuremap(reshape_flat_to_featuremap(p.fc_bias, p.arch), p));
  const std::vector<float> z = {1.0f, 0.0f, 0.3f, -0.7f};
  CHECK(generate_from_latent(z, p) == generate_from_latent(z, p));
  LatentVector lv{{1.0f, 0.0f}, {0.3f, -0.7f}};
  CHECK(generate_from_latent(lv, p) == generate_from_latent(z, p));
}

TEST_CASE("default architecture") {
  const auto a = ciwgan_timit_9();
  CHECK_NOTHROW(a.validate());
  CHECK(a.latent_dim() == 100);
  CHECK(a.fc_size() == 16384);
  CHECK(a.upsample_factor() == 1024);
  CHECK(a.output_length(16) == 16384);
  CHECK(a.output_length(3) == 3072);
  CHECK(a.conv_layers.back().activation == Activation::tanh);
}

TEST_CASE("architecture validation") {
  auto a = tiny_arch();
  a.conv_layers[1].in_channels = 2;
  CHECK_THROWS_AS(a.validate(), ValidationError);
  a = tiny_arch();
  a.conv_layers[1].out_channels = 2;
  CHECK_THROWS_AS(a.validate(), ValidationError);
  a = tiny_arch();
  a.conv_layers[0].kernel_len = 1;
  CHECK_THROWS_AS(a.validate(), ValidationError);
  a = tiny_arch();
  a.n_noise = 0;
  CHECK_THROWS_AS(a.validate(), ValidationError);
}

TEST_CASE("params validation catches non-finite weights") {
  auto p = random_params(tiny_arch(), 1);
  CHECK_NOTHROW(p.validate());
  p.conv[1].kernel[3] = std::nanf("");
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = random_params(tiny_arch(), 1);
  p.fc_bias.pop_back();
  CHECK_THROWS_AS(p.validate(), ShapeError);
}

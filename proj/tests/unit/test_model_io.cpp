#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "fcprobe/model_io.hpp"
#include "support/fcpw_writer.hpp"
#include "support/oracles.hpp"

using namespace fcprobe;
using fcprobe::testing::encode_by_hand;
using fcprobe::testing::FcpwBuilder;
using fcprobe::testing::random_params;
using fcprobe::testing::tiny_arch;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fcprobe_test_" + name);
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) out.push_back(std::stoi(hex.substr(i, 2), nullptr, 16));
  return out;
}

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t off) {
  return b[off] | (b[off + 1] << 8) | (b[off + 2] << 16) | (std::uint32_t(b[off + 3]) << 24);
}

}  // namespace

TEST_CASE("crc32 check value") {
  const std::string s = "123456789";
  CHECK(crc32({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}) == 0xCBF43926u);
  CHECK(crc32({}) == 0u);
}

TEST_CASE("serializer matches the hand-rolled encoder") {
  const auto p = random_params(tiny_arch(), 1);
  CHECK(serialize_weights(p) == encode_by_hand(p));
}

TEST_CASE("parse inverts serialize exactly") {
  const auto p = random_params(tiny_arch(), 2);
  const auto q = parse_weights(serialize_weights(p));
  CHECK(q.arch == p.arch);
  CHECK(q.fc_weight == p.fc_weight);
  CHECK(q.fc_bias == p.fc_bias);
  REQUIRE(q.conv.size() == 2);
  CHECK(q.conv[1].kernel == p.conv[1].kernel);
  CHECK(q.conv[1].bias == p.conv[1].bias);
}

TEST_CASE("save, load, save is byte-identical") {
  const auto p = random_params(ciwgan_timit_9(), 3);
  const auto a = temp_path("a.fcpw"), b = temp_path("b.fcpw"), c = temp_path("c.fcpw");
  save_weights(p, a);
  save_weights(load_weights(a), b);
  save_weights(p, c);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a) == read_file(c));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  std::filesystem::remove(c);
}

TEST_CASE("truncated file fails the checksum") {
  auto bytes = serialize_weights(random_params(tiny_arch(), 4));
  bytes.resize(bytes.size() - 37);
  CHECK_THROWS_AS(parse_weights(bytes), CrcMismatchError);
  bytes.resize(6);
  CHECK_THROWS_AS(parse_weights(bytes), CrcMismatchError);
}

TEST_CASE("flipped payload bit fails the checksum") {
  auto bytes = serialize_weights(random_params(tiny_arch(), 4));
  bytes[bytes.size() / 2] ^= 0x10;
  CHECK_THROWS_AS(parse_weights(bytes), CrcMismatchError);
}

TEST_CASE("bad magic is reported before the checksum") {
  auto bytes = serialize_weights(random_params(tiny_arch(), 4));
  bytes[0] = 'X';
  CHECK_THROWS_AS(parse_weights(bytes), BadMagicError);
  CHECK_THROWS_AS(parse_weights(std::vector<std::uint8_t>{'F', 'C'}), BadMagicError);
}

TEST_CASE("missing tensor is named") {
  const auto p = random_params(tiny_arch(), 5);
  const auto& a = p.arch;
  FcpwBuilder b;
  b.header(a).u32(5);
  b.tensor("fc.weight", {4, 12}, p.fc_weight);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& l = a.conv_layers[i];
    b.tensor("conv" + std::to_string(i) + ".kernel",
             {std::uint32_t(l.in_channels), std::uint32_t(l.out_channels), std::uint32_t(l.kernel_len)},
             p.conv[i].kernel);
    b.tensor("conv" + std::to_string(i) + ".bias", {std::uint32_t(l.out_channels)}, p.conv[i].bias);
  }
  try {
    parse_weights(b.finish());
    FAIL("expected MissingTensorError");
  } catch (const MissingTensorError& e) {
    CHECK(e.tensor() == "fc.bias");
    CHECK(std::string(e.what()).find("fc.bias") != std::string::npos);
  }
}

TEST_CASE("wrong tensor dims are named") {
  const auto p = random_params(tiny_arch(), 6);
  const auto& a = p.arch;
  FcpwBuilder b;
  b.header(a).u32(6);
  b.tensor("fc.weight", {12, 4}, p.fc_weight);
  b.tensor("fc.bias", {12}, p.fc_bias);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& l = a.conv_layers[i];
    b.tensor("conv" + std::to_string(i) + ".kernel",
             {std::uint32_t(l.in_channels), std::uint32_t(l.out_channels), std::uint32_t(l.kernel_len)},
             p.conv[i].kernel);
    b.tensor("conv" + std::to_string(i) + ".bias", {std::uint32_t(l.out_channels)}, p.conv[i].bias);
  }
  try {
    parse_weights(b.finish());
    FAIL("expected TensorShapeError");
  } catch (const TensorShapeError& e) {
    CHECK(e.tensor() == "fc.weight");
  }
}

TEST_CASE("unsupported version and unknown tensors") {
  const auto p = random_params(tiny_arch(), 7);
  auto bytes = encode_by_hand(p);
  bytes[4] = 2;
  bytes.resize(bytes.size() - 4);
  const auto crc = crc32(bytes);
  for (int i = 0; i < 4; ++i) bytes.push_back((crc >> (8 * i)) & 0xFF);
  CHECK_THROWS_AS(parse_weights(bytes), FormatError);
}

TEST_CASE("unwritable and unreadable paths raise IoError") {
  const auto p = random_params(tiny_arch(), 8);
  CHECK_THROWS_AS(save_weights(p, "/nonexistent-dir/x/model.fcpw"), IoError);
  CHECK_THROWS_AS(load_weights("/nonexistent-dir/x/model.fcpw"), IoError);
}

TEST_CASE("WAV header layout") {
  const Waveform w{{0.0f, 0.0f, 0.0f}, 16000};
  const auto b = encode_wav(w);
  REQUIRE(b.size() == 50);
  CHECK(std::string(b.begin(), b.begin() + 4) == "RIFF");
  CHECK(le32(b, 4) == 42);
  CHECK(std::string(b.begin() + 8, b.begin() + 16) == "WAVEfmt ");
  CHECK(le32(b, 24) == 16000);
  CHECK(le32(b, 28) == 32000);
  CHECK(std::string(b.begin() + 36, b.begin() + 40) == "data");
  CHECK(le32(b, 40) == 6);
  for (std::size_t i = 44; i < 50; ++i) CHECK(b[i] == 0);
}

TEST_CASE("WAV quantization") {
  const auto b = encode_wav({{1.0f, -1.0f, 5.0f, -5.0f}, 16000});
  auto s16 = [&](std::size_t i) { return static_cast<std::int16_t>(b[44 + 2 * i] | (b[45 + 2 * i] << 8)); };
  CHECK(s16(0) == 32767);
  CHECK(s16(1) == -32767);
  CHECK(s16(2) == 32767);
  CHECK(s16(3) == -32768);
}

TEST_CASE("WAV golden bytes") {
  const Waveform w{{0.0f, 0.5f, -0.5f, 1.0f, -1.0f, 2.0f, -2.0f, 0.25f, -0.25f, 0.125f, -0.125f, 0.0625f, 0.75f,
                    -0.75f, 0.001f, -0.999f},
                   16000};
  const auto golden = from_hex(
      "524946464400000057415645666d74201000000001000100803e0000007d0000020010006461746120000000"
      "0000004000c0ff7f0180ff7f0080002000e0001000f00008ff5f01a021002280");
  const auto b = encode_wav(w);
  CHECK(b == golden);
  CHECK(crc32(b) == 0xe2e576d1u);

  const auto path = temp_path("golden.wav");
  write_wav(w, path);
  CHECK(read_file(path) == golden);
  std::filesystem::remove(path);
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fcprobe/generator.hpp"

namespace fcprobe {

// FCPW v1: "FCPW", u32 version, architecture block, tensor table, CRC32.
// All integers little-endian; tensor payloads are little-endian IEEE-754
// float32. Tensors are written in the order fc.weight, fc.bias, then
// conv{i}.kernel, conv{i}.bias for each layer.
inline constexpr std::uint32_t kFcpwVersion = 1;

// CRC-32 (IEEE 802.3 polynomial), as used for the FCPW trailer.
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_weights(const GeneratorParams& params);
// Throws BadMagicError, CrcMismatchError, FormatError, MissingTensorError or
// TensorShapeError.
GeneratorParams parse_weights(std::span<const std::uint8_t> bytes);

void save_weights(const GeneratorParams& params, const std::filesystem::path& path);
GeneratorParams load_weights(const std::filesystem::path& path);

// RIFF/WAVE PCM16 mono. Sample s encodes as round(s * 32767) clamped to
// [-32768, 32767].
std::vector<std::uint8_t> encode_wav(const Waveform& w);
void write_wav(const Waveform& w, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace fcprobe

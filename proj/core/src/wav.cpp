#include <algorithm>
#include <cmath>

#include "fcprobe/model_io.hpp"

namespace fcprobe {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

std::int16_t quantize(float s) {
  if (std::isnan(s)) return 0;
  const double q = std::round(static_cast<double>(s) * 32767.0);
  return static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0));
}

}  // namespace

std::vector<std::uint8_t> encode_wav(const Waveform& w) {
  constexpr std::uint16_t kChannels = 1;
  constexpr std::uint16_t kBits = 16;
  constexpr std::uint16_t kBlockAlign = kChannels * kBits / 8;
  const auto data_size = static_cast<std::uint32_t>(w.samples.size() * kBlockAlign);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, kChannels);
  put_u32(out, w.sample_rate);
  put_u32(out, w.sample_rate * kBlockAlign);
  put_u16(out, kBlockAlign);
  put_u16(out, kBits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (float s : w.samples) put_u16(out, static_cast<std::uint16_t>(quantize(s)));
  return out;
}

void write_wav(const Waveform& w, const std::filesystem::path& path) {
  write_file(path, encode_wav(w));
}

}  // namespace fcprobe

#include "fcprobe/model_io.hpp"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <iterator>
#include <map>
#include <string>

namespace fcprobe {

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for large buffers.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t n = std::min(kChunk, bytes.size() - off);
    crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

namespace {

constexpr char kMagic[4] = {'F', 'C', 'P', 'W'};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void count(std::size_t v, const char* what) {
    if (v > 0xFFFFFFFFu) throw ValidationError(std::string(what) + " does not fit in u32");
    u32(static_cast<std::uint32_t>(v));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return need(1)[0]; }
  std::uint16_t u16() {
    const auto* p = need(2);
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
  }
  std::uint32_t u32() {
    const auto* p = need(4);
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string str(std::size_t n) {
    const auto* p = need(n);
    return {reinterpret_cast<const char*>(p), n};
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  const std::uint8_t* need(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("weight file is truncated");
    const auto* p = in_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

struct RawTensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;
};

void write_tensor(ByteWriter& w, const std::string& name, const std::vector<std::size_t>& dims,
                  const std::vector<float>& values) {
  w.u16(static_cast<std::uint16_t>(name.size()));
  w.bytes(name.data(), name.size());
  w.u8(static_cast<std::uint8_t>(dims.size()));
  for (std::size_t d : dims) w.count(d, "tensor dimension");
  for (float v : values) w.f32(v);
}

std::string dims_string(const std::vector<std::uint32_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? ", " : "") + std::to_string(dims[i]);
  return s + "]";
}

std::vector<float> take_tensor(std::map<std::string, RawTensor>& tensors, const std::string& name,
                               const std::vector<std::size_t>& expected) {
  const auto it = tensors.find(name);
  if (it == tensors.end()) throw MissingTensorError(name);
  const auto& dims = it->second.dims;
  bool ok = dims.size() == expected.size();
  for (std::size_t i = 0; ok && i < dims.size(); ++i) ok = dims[i] == expected[i];
  if (!ok) {
    std::vector<std::uint32_t> want(expected.begin(), expected.end());
    throw TensorShapeError(name, "got " + dims_string(dims) + ", expected " + dims_string(want));
  }
  auto values = std::move(it->second.values);
  tensors.erase(it);
  return values;
}

}  // namespace

std::vector<std::uint8_t> serialize_weights(const GeneratorParams& params) {
  params.validate();
  const auto& a = params.arch;
  ByteWriter w;
  w.bytes(kMagic, 4);
  w.u32(kFcpwVersion);
  w.count(a.n_codes, "n_codes");
  w.count(a.n_noise, "n_noise");
  w.count(a.fc_channels, "fc_channels");
  w.count(a.fc_timesteps, "fc_timesteps");
  w.u32(a.sample_rate);
  w.count(a.conv_layers.size(), "layer count");
  for (const auto& l : a.conv_layers) {
    w.count(l.in_channels, "in_channels");
    w.count(l.out_channels, "out_channels");
    w.count(l.kernel_len, "kernel_len");
    w.count(l.stride, "stride");
    w.u32(static_cast<std::uint32_t>(l.activation));
  }
  w.count(2 + 2 * a.conv_layers.size(), "tensor count");
  write_tensor(w, "fc.weight", {a.latent_dim(), a.fc_size()}, params.fc_weight);
  write_tensor(w, "fc.bias", {a.fc_size()}, params.fc_bias);
  for (std::size_t i = 0; i < a.conv_layers.size(); ++i) {
    const auto& l = a.conv_layers[i];
    const std::string prefix = "conv" + std::to_string(i);
    write_tensor(w, prefix + ".kernel", {l.in_channels, l.out_channels, l.kernel_len},
                 params.conv[i].kernel);
    write_tensor(w, prefix + ".bias", {l.out_channels}, params.conv[i].bias);
  }
  auto& buf = w.buffer();
  w.u32(crc32(buf));
  return std::move(buf);
}

GeneratorParams parse_weights(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw BadMagicError("not an FCPW weight file (bad magic)");
  }
  if (bytes.size() < 8) throw CrcMismatchError("weight file is too short to hold a checksum");
  const auto body = bytes.first(bytes.size() - 4);
  ByteReader trailer(bytes.last(4));
  const std::uint32_t stored = trailer.u32();
  const std::uint32_t actual = crc32(body);
  if (stored != actual) throw CrcMismatchError("weight file checksum mismatch (corrupt or truncated)");

  ByteReader r(body);
  r.str(4);
  const std::uint32_t version = r.u32();
  if (version != kFcpwVersion) {
    throw FormatError("unsupported FCPW version " + std::to_string(version));
  }

  GeneratorParams p;
  auto& a = p.arch;
  a.n_codes = r.u32();
  a.n_noise = r.u32();
  a.fc_channels = r.u32();
  a.fc_timesteps = r.u32();
  a.sample_rate = r.u32();
  const std::uint32_t layers = r.u32();
  for (std::uint32_t i = 0; i < layers; ++i) {
    ConvLayerSpec l;
    l.in_channels = r.u32();
    l.out_channels = r.u32();
    l.kernel_len = r.u32();
    l.stride = r.u32();
    const std::uint32_t act = r.u32();
    if (act > 2) throw FormatError("unknown activation code " + std::to_string(act));
    l.activation = static_cast<Activation>(act);
    a.conv_layers.push_back(l);
  }
  a.validate();

  std::map<std::string, RawTensor> tensors;
  const std::uint32_t count = r.u32();
  for (std::uint32_t t = 0; t < count; ++t) {
    const std::string name = r.str(r.u16());
    RawTensor raw;
    const std::uint8_t rank = r.u8();
    std::size_t n = 1;
    for (std::uint8_t k = 0; k < rank; ++k) {
      raw.dims.push_back(r.u32());
      n *= raw.dims.back();
    }
    if (n > body.size()) throw FormatError("tensor \"" + name + "\" is larger than the file");
    raw.values.resize(n);
    for (auto& v : raw.values) v = r.f32();
    if (!tensors.emplace(name, std::move(raw)).second) {
      throw FormatError("duplicate tensor \"" + name + "\"");
    }
  }
  if (!r.done()) throw FormatError("trailing bytes after tensor table");

  p.fc_weight = take_tensor(tensors, "fc.weight", {a.latent_dim(), a.fc_size()});
  p.fc_bias = take_tensor(tensors, "fc.bias", {a.fc_size()});
  for (std::size_t i = 0; i < a.conv_layers.size(); ++i) {
    const auto& l = a.conv_layers[i];
    const std::string prefix = "conv" + std::to_string(i);
    ConvLayerParams cp;
    cp.kernel = take_tensor(tensors, prefix + ".kernel", {l.in_channels, l.out_channels, l.kernel_len});
    cp.bias = take_tensor(tensors, prefix + ".bias", {l.out_channels});
    p.conv.push_back(std::move(cp));
  }
  if (!tensors.empty()) throw FormatError("unexpected tensor \"" + tensors.begin()->first + "\"");
  p.validate();
  return p;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

void save_weights(const GeneratorParams& params, const std::filesystem::path& path) {
  write_file(path, serialize_weights(params));
}

GeneratorParams load_weights(const std::filesystem::path& path) {
  return parse_weights(read_file(path));
}

}  // namespace fcprobe

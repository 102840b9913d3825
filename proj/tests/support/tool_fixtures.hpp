#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fcprobe/fixture.hpp"
#include "fcprobe/model_io.hpp"
#include "fcprobe/tools/cli.hpp"

namespace fcprobe::testing {

// Scratch directory holding a default fixture model, removed on destruction.
class Workspace {
 public:
  explicit Workspace(const std::string& name)
      : dir_(std::filesystem::temp_directory_path() / ("fcprobe_" + name)) {
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
    save_weights(make_fixture(default_fixture_spec(1)), model());
  }
  ~Workspace() { std::filesystem::remove_all(dir_); }

  std::filesystem::path path(const std::string& name) const { return dir_ / name; }
  std::string model() const { return (dir_ / "model.fcpw").string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name).string();
  }

 private:
  std::filesystem::path dir_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = fcprobe::tools::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::vector<std::uint8_t> base64_decode(const std::string& s) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::uint8_t> out;
  unsigned buf = 0;
  int bits = 0;
  for (char c : s) {
    const int v = value(c);
    if (v < 0) continue;
    buf = (buf << 6) | static_cast<unsigned>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((buf >> bits) & 0xFF));
    }
  }
  return out;
}

// Twelve weight columns: six from each fixture prototype family.
inline std::string twelve_columns_json() {
  std::string s = "[";
  for (int i = 0; i < 12; ++i) {
    const int code = i % 6, t = i < 6 ? (code % 2) : 1 - (code % 2);
    s += std::string(i ? "," : "") + "{\"label\":\"c" + std::to_string(i) + "\",\"kind\":\"code\",\"index\":" +
         std::to_string(code) + ",\"t\":" + std::to_string(t) + "}";
  }
  return s + "]";
}

}  // namespace fcprobe::testing

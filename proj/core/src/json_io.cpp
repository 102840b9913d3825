#include "fcprobe/json_io.hpp"

#include <string>

namespace fcprobe {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

// Signed integers come from programmatically built documents.
bool is_count(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::size_t as_count(const json& j, const std::string& path) {
  if (!is_count(j)) fail(path, "expected unsigned integer");
  return j.get<std::size_t>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected string");
  return j.get<std::string>();
}

std::vector<float> as_float_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected array of numbers");
  std::vector<float> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<float>(as_number(j[i], path + "[" + std::to_string(i) + "]")));
  }
  return out;
}

template <typename Fn>
auto wrap(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

}  // namespace

ColumnRef column_ref_from_json(const json& j, const std::string& path) {
  ColumnRef c;
  const auto kind = as_string(require(j, "kind", path), path + ".kind");
  c.variable.kind = wrap(path + ".kind", [&] { return parse_variable_kind(kind); });
  c.variable.index = as_count(require(j, "index", path), path + ".index");
  c.time_index = as_count(require(j, "t", path), path + ".t");
  return c;
}

json to_json(const ColumnRef& c) {
  return {{"kind", std::string(to_string(c.variable.kind))},
          {"index", c.variable.index},
          {"t", c.time_index}};
}

SpliceSpec splice_spec_from_json(const json& j) {
  SpliceSpec s;
  const auto& cols = require(j, "columns", "splice");
  if (!cols.is_array()) fail("columns", "expected array");
  if (cols.empty()) fail("columns", "must contain at least one column");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    s.columns.push_back(column_ref_from_json(cols[i], "columns[" + std::to_string(i) + "]"));
  }
  if (const auto it = j.find("mask"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) fail("mask", "expected array");
    std::vector<ChannelRange> mask;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = "mask[" + std::to_string(i) + "]";
      const auto& r = (*it)[i];
      mask.push_back({as_count(require(r, "start", p), p + ".start"),
                      as_count(require(r, "len", p), p + ".len")});
    }
    s.mask = std::move(mask);
  }
  if (const auto it = j.find("include_bias"); it != j.end()) {
    if (!it->is_boolean()) fail("include_bias", "expected boolean");
    s.include_bias = it->get<bool>();
  }
  return s;
}

json to_json(const SpliceSpec& s) {
  json j;
  j["columns"] = json::array();
  for (const auto& c : s.columns) j["columns"].push_back(to_json(c));
  if (s.mask) {
    j["mask"] = json::array();
    for (const auto& r : *s.mask) j["mask"].push_back({{"start", r.start}, {"len", r.length}});
  }
  if (s.include_bias) j["include_bias"] = true;
  return j;
}

LatentVector latent_from_json(const json& j, const ArchitectureSpec& arch) {
  if (!j.is_object()) fail("latent", "expected object");
  LatentVector z;
  if (const auto it = j.find("z"); it != j.end()) {
    const auto all = as_float_array(*it, "z");
    if (all.size() != arch.latent_dim()) {
      fail("z", "expected " + std::to_string(arch.latent_dim()) + " values, got " +
                    std::to_string(all.size()));
    }
    z.code.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(arch.n_codes));
    z.noise.assign(all.begin() + static_cast<std::ptrdiff_t>(arch.n_codes), all.end());
  } else {
    z.code = as_float_array(require(j, "code", "latent"), "code");
    z.noise = as_float_array(require(j, "noise", "latent"), "noise");
    if (z.code.size() != arch.n_codes) {
      fail("code", "expected " + std::to_string(arch.n_codes) + " values, got " +
                       std::to_string(z.code.size()));
    }
    if (z.noise.size() != arch.n_noise) {
      fail("noise", "expected " + std::to_string(arch.n_noise) + " values, got " +
                        std::to_string(z.noise.size()));
    }
  }
  for (std::size_t i = 0; i < z.noise.size(); ++i) {
    if (z.noise[i] < -1.0f || z.noise[i] > 1.0f) {
      fail("noise[" + std::to_string(i) + "]", "must lie in [-1, 1]");
    }
  }
  return z;
}

ArchitectureSpec architecture_from_json(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    return wrap("arch", [&] { return architecture_preset(name); });
  }
  ArchitectureSpec a;
  a.n_codes = as_count(require(j, "n_codes", "arch"), "arch.n_codes");
  a.n_noise = as_count(require(j, "n_noise", "arch"), "arch.n_noise");
  a.fc_channels = as_count(require(j, "fc_channels", "arch"), "arch.fc_channels");
  a.fc_timesteps = as_count(require(j, "fc_timesteps", "arch"), "arch.fc_timesteps");
  a.sample_rate = static_cast<std::uint32_t>(as_count(require(j, "sample_rate", "arch"), "arch.sample_rate"));
  const auto& layers = require(j, "conv_layers", "arch");
  if (!layers.is_array()) fail("arch.conv_layers", "expected array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string p = "arch.conv_layers[" + std::to_string(i) + "]";
    const auto& l = layers[i];
    ConvLayerSpec spec;
    spec.in_channels = as_count(require(l, "in_channels", p), p + ".in_channels");
    spec.out_channels = as_count(require(l, "out_channels", p), p + ".out_channels");
    spec.kernel_len = as_count(require(l, "kernel_len", p), p + ".kernel_len");
    spec.stride = as_count(require(l, "stride", p), p + ".stride");
    const auto act = as_string(require(l, "activation", p), p + ".activation");
    spec.activation = wrap(p + ".activation", [&] { return parse_activation(act); });
    a.conv_layers.push_back(spec);
  }
  wrap("arch", [&] {
    a.validate();
    return 0;
  });
  return a;
}

json to_json(const ArchitectureSpec& a) {
  json layers = json::array();
  for (const auto& l : a.conv_layers) {
    layers.push_back({{"in_channels", l.in_channels},
                      {"out_channels", l.out_channels},
                      {"kernel_len", l.kernel_len},
                      {"stride", l.stride},
                      {"activation", std::string(to_string(l.activation))}});
  }
  return {{"n_codes", a.n_codes},         {"n_noise", a.n_noise},
          {"latent_dim", a.latent_dim()}, {"fc_channels", a.fc_channels},
          {"fc_timesteps", a.fc_timesteps}, {"sample_rate", a.sample_rate},
          {"conv_layers", layers},        {"upsample_factor", a.upsample_factor()}};
}

FixtureSpec fixture_spec_from_json(const json& j) {
  if (!j.is_object()) fail("fixture", "expected object");
  FixtureSpec s;
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!is_count(*it)) fail("seed", "expected unsigned integer");
    s.seed = it->get<std::uint64_t>();
  }
  const auto it = j.find("arch");
  s.arch = it == j.end() ? ciwgan_timit_9() : architecture_from_json(*it);
  if (const auto pt = j.find("prototypes"); pt != j.end()) {
    if (!pt->is_array()) fail("prototypes", "expected array");
    for (std::size_t i = 0; i < pt->size(); ++i) {
      const std::string p = "prototypes[" + std::to_string(i) + "]";
      const auto& e = (*pt)[i];
      ColumnPrototype proto;
      proto.label = as_string(require(e, "label", p), p + ".label");
      proto.freq_hz = as_number(require(e, "freq_hz", p), p + ".freq_hz");
      if (const auto d = e.find("decay"); d != e.end()) proto.decay = as_number(*d, p + ".decay");
      s.prototypes.push_back(std::move(proto));
    }
  }
  return s;
}

json to_json(const LabeledMatrix& m) {
  json values = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
    values.push_back(std::move(row));
  }
  return {{"labels", m.labels}, {"values", std::move(values)}};
}

json to_json(const Embedding& e) {
  json points = json::array();
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    json coords = json::array();
    for (std::size_t d = 0; d < e.dims; ++d) coords.push_back(e.at(i, d));
    points.push_back({{"label", e.labels[i]}, {"coords", std::move(coords)}});
  }
  return {{"dims", e.dims}, {"points", std::move(points)}, {"eigenvalues", e.eigenvalues}};
}

}  // namespace fcprobe

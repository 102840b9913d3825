#include "fcprobe/weight_probe.hpp"

#include <charconv>
#include <cmath>

namespace fcprobe {

std::string_view to_string(VariableKind kind) {
  return kind == VariableKind::code ? "code" : "noise";
}

VariableKind parse_variable_kind(std::string_view s) {
  if (s == "code") return VariableKind::code;
  if (s == "noise") return VariableKind::noise;
  throw ValidationError("unknown variable kind \"" + std::string(s) +
                        "\" (expected code or noise)");
}

VariableRef parse_variable_ref(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("variable \"" + std::string(s) + "\" must look like code:N or noise:N");
  }
  VariableRef v;
  v.kind = parse_variable_kind(s.substr(0, colon));
  const auto digits = s.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v.index);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ValidationError("variable index \"" + std::string(digits) + "\" is not a number");
  }
  return v;
}

std::size_t VariableRef::global_row(const ArchitectureSpec& arch) const {
  const std::size_t limit = kind == VariableKind::code ? arch.n_codes : arch.n_noise;
  if (index >= limit) {
    throw RangeError(std::string(fcprobe::to_string(kind)) + " index " + std::to_string(index) +
                     " out of range (model has " + std::to_string(limit) + ")");
  }
  return kind == VariableKind::code ? index : arch.n_codes + index;
}

std::string VariableRef::to_string() const {
  return std::string(fcprobe::to_string(kind)) + ":" + std::to_string(index);
}

VariableRef variable_at_row(std::size_t row, const ArchitectureSpec& arch) {
  if (row >= arch.latent_dim()) throw RangeError("latent row " + std::to_string(row) + " out of range");
  if (row < arch.n_codes) return {VariableKind::code, row};
  return {VariableKind::noise, row - arch.n_codes};
}

FeatureMap extract_weight_matrix(const VariableRef& v, const GeneratorParams& params,
                                 const WeightMatrixOptions& opts) {
  const auto w = params.fc_row(v.global_row(params.arch));
  std::vector<float> flat(w.begin(), w.end());
  if (opts.include_bias) {
    for (std::size_t k = 0; k < flat.size(); ++k) flat[k] = params.fc_bias[k] + flat[k];
  }
  if (opts.relu_first) {
    for (float& x : flat) x = x > 0.0f ? x : 0.0f;
  }
  return reshape_flat_to_featuremap(flat, params.arch);
}

namespace {

// Profile over time of mean |w| across channels, for one flat time-major row.
std::vector<double> profile_of_row(std::span<const float> w, std::size_t C, std::size_t T) {
  std::vector<double> profile(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    double sum = 0.0;
    for (std::size_t c = 0; c < C; ++c) sum += std::fabs(static_cast<double>(w[t * C + c]));
    profile[t] = sum / static_cast<double>(C);
  }
  return profile;
}

}  // namespace

WeightStats mean_abs_weights(const GeneratorParams& params) {
  const auto& arch = params.arch;
  const std::size_t C = arch.fc_channels;
  const std::size_t T = arch.fc_timesteps;
  WeightStats stats;
  for (std::size_t row = 0; row < arch.latent_dim(); ++row) {
    auto profile = profile_of_row(params.fc_row(row), C, T);
    double total = 0.0;
    for (double p : profile) total += p;
    stats.variables.push_back(variable_at_row(row, arch));
    stats.mean_abs_weight.push_back(total / static_cast<double>(T));
    stats.temporal_profile.push_back(std::move(profile));
  }
  return stats;
}

std::vector<double> temporal_profile(const VariableRef& v, const GeneratorParams& params) {
  return profile_of_row(params.fc_row(v.global_row(params.arch)), params.arch.fc_channels,
                        params.arch.fc_timesteps);
}

Waveform generate_from_weight_matrix(const VariableRef& v, const GeneratorParams& params,
                                     const WeightMatrixOptions& opts) {
  return generate_from_featuremap(extract_weight_matrix(v, params, opts), params);
}

}  // namespace fcprobe

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fcprobe/generator.hpp"

namespace fcprobe {

enum class VariableKind { code, noise };

// A latent variable addressed within its kind. Codes occupy the first
// n_codes rows of the FC weight, noise variables the rest.
struct VariableRef {
  VariableKind kind = VariableKind::code;
  std::size_t index = 0;

  // Throws RangeError if index is not valid for arch.
  std::size_t global_row(const ArchitectureSpec& arch) const;
  std::string to_string() const;

  friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

std::string_view to_string(VariableKind kind);
// Accepts "code" or "noise"; throws ValidationError otherwise.
VariableKind parse_variable_kind(std::string_view s);
// Parses the "code:3" / "noise:17" addressing syntax.
VariableRef parse_variable_ref(std::string_view s);
// Inverse of global_row.
VariableRef variable_at_row(std::size_t row, const ArchitectureSpec& arch);

struct WeightMatrixOptions {
  bool include_bias = false;
  // For models with an activation after the FC layer.
  bool relu_first = false;
};

FeatureMap extract_weight_matrix(const VariableRef& v, const GeneratorParams& params,
                                 const WeightMatrixOptions& opts = {});

struct WeightStats {
  // One entry per latent variable, codes first.
  std::vector<VariableRef> variables;
  std::vector<double> mean_abs_weight;
  // temporal_profile[i][t]: mean over channels of |w| at time t.
  std::vector<std::vector<double>> temporal_profile;
};

// Computed in double precision.
WeightStats mean_abs_weights(const GeneratorParams& params);
std::vector<double> temporal_profile(const VariableRef& v, const GeneratorParams& params);

Waveform generate_from_weight_matrix(const VariableRef& v, const GeneratorParams& params,
                                     const WeightMatrixOptions& opts = {});

}  // namespace fcprobe

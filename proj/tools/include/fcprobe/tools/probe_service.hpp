#pragma once

#include <string>
#include <vector>

#include "fcprobe/analysis.hpp"
#include "fcprobe/column_lab.hpp"
#include "fcprobe/json_io.hpp"

namespace fcprobe::tools {

// Request failure with the HTTP status it maps to.
class ServiceError : public Error {
 public:
  ServiceError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

struct LabeledColumn {
  std::string label;
  ColumnRef ref;
};

// Accepts [{"label":"i","kind":"code","index":3,"t":5}, ...] or
// {"columns":[...]}. Missing labels default to "code:3@5".
std::vector<LabeledColumn> labeled_columns_from_json(const json& j);

enum class CorrelationMode { weights, spectra };
CorrelationMode parse_correlation_mode(std::string_view s);

struct CorrelationOptions {
  CorrelationMode mode = CorrelationMode::weights;
  // Correlate log10 magnitudes in spectra mode.
  bool log_spectra = false;
  SpectrogramParams stft;
};

// weights: raw C-channel columns. spectra: averaged spectrum of each column
// generated on its own.
LabeledMatrix correlate_columns(const std::vector<LabeledColumn>& columns, const GeneratorParams& params,
                                const CorrelationOptions& opts = {});

// Channel-block means, (C / k) x T row-major. k must divide C.
std::vector<float> downsample_channels(const FeatureMap& fm, std::size_t k);

// Max-pools to at most max_frames x max_bins.
json pooled_spectrogram_json(const Spectrogram& s, std::size_t max_frames = 200, std::size_t max_bins = 256);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);

// JSON front end over one immutable model. Every method is const and
// deterministic, so identical requests give identical responses.
class ProbeService {
 public:
  ProbeService(GeneratorParams params, std::string model_path);

  const GeneratorParams& params() const { return params_; }

  json info() const;
  json variables() const;
  json matrix(const std::string& kind, const std::string& index, const std::string& downsample) const;
  json profile(const std::string& kind, const std::string& index) const;
  // Body: a SpliceSpec, {"variable":"code:3","include_bias":true}, or a
  // latent ({"latent":{...}}, {"z":[...]}, {"code":[...],"noise":[...]}).
  json generate(const json& body) const;
  // Body: a SpliceSpec plus "window".
  json sweep(const json& body) const;
  // Body: {"columns":[...], "mode":"weights"|"spectra", "log":false, "dims":2}.
  json correlate(const json& body) const;

  // Waveform a generate body describes, shared with the CLI.
  Waveform waveform_for(const json& body) const;

 private:
  VariableRef path_variable(const std::string& kind, const std::string& index) const;

  GeneratorParams params_;
  std::string model_path_;
  WeightStats stats_;
};

}  // namespace fcprobe::tools

#include "fcprobe/tools/probe_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fcprobe/model_io.hpp"

namespace fcprobe::tools {

namespace {

std::string default_label(const ColumnRef& c) {
  return c.variable.to_string() + "@" + std::to_string(c.time_index);
}

std::size_t parse_index(const std::string& s, int status, const std::string& what) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ServiceError(status, what + ": expected a non-negative integer, got \"" + s + "\"");
  }
  return v;
}

json waveform_json(const Waveform& w) {
  const auto spec = spectrogram(w);
  const auto avg = averaged_spectrum(spec);
  return {{"sample_rate", w.sample_rate},
          {"num_samples", w.samples.size()},
          {"wav_base64", base64_encode(encode_wav(w))},
          {"spectrogram", pooled_spectrogram_json(spec)},
          {"averaged_spectrum", {{"max_hz", avg.max_hz}, {"values", avg.values}}}};
}

bool is_count(const json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0); }

bool is_latent(const json& body) { return body.contains("z") || body.contains("code") || body.contains("noise"); }

}  // namespace

std::vector<LabeledColumn> labeled_columns_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    const auto it = j.find("columns");
    if (it == j.end()) throw ValidationError("columns: missing");
    arr = &*it;
  }
  if (!arr->is_array()) throw ValidationError("columns: expected array");
  std::vector<LabeledColumn> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string path = "columns[" + std::to_string(i) + "]";
    const auto& e = (*arr)[i];
    LabeledColumn c;
    c.ref = column_ref_from_json(e, path);
    if (const auto l = e.find("label"); l != e.end()) {
      if (!l->is_string()) throw ValidationError(path + ".label: expected string");
      c.label = l->get<std::string>();
    } else {
      c.label = default_label(c.ref);
    }
    out.push_back(std::move(c));
  }
  return out;
}

CorrelationMode parse_correlation_mode(std::string_view s) {
  if (s == "weights") return CorrelationMode::weights;
  if (s == "spectra") return CorrelationMode::spectra;
  throw ValidationError("mode: expected \"weights\" or \"spectra\", got \"" + std::string(s) + "\"");
}

LabeledMatrix correlate_columns(const std::vector<LabeledColumn>& columns, const GeneratorParams& params,
                                const CorrelationOptions& opts) {
  std::vector<LabeledVector> vectors;
  vectors.reserve(columns.size());
  for (const auto& c : columns) {
    LabeledVector v{c.label, {}};
    if (opts.mode == CorrelationMode::weights) {
      const auto col = extract_column(c.ref, params);
      v.values.assign(col.begin(), col.end());
    } else {
      SpliceSpec single;
      single.columns = {c.ref};
      v.values = averaged_spectrum(spectrogram(generate_from_splice(single, params), opts.stft)).values;
      if (opts.log_spectra) {
        for (auto& x : v.values) x = std::log10(x + 1e-12);
      }
    }
    vectors.push_back(std::move(v));
  }
  return pearson_correlation_matrix(vectors);
}

std::vector<float> downsample_channels(const FeatureMap& fm, std::size_t k) {
  const std::size_t C = fm.channels(), T = fm.timesteps();
  if (k == 0 || C % k != 0) {
    throw ValidationError("downsample: " + std::to_string(k) + " does not divide " + std::to_string(C) +
                          " channels");
  }
  std::vector<float> out((C / k) * T);
  for (std::size_t b = 0; b < C / k; ++b) {
    for (std::size_t t = 0; t < T; ++t) {
      double sum = 0;
      for (std::size_t c = b * k; c < (b + 1) * k; ++c) sum += fm.at(c, t);
      out[b * T + t] = static_cast<float>(sum / static_cast<double>(k));
    }
  }
  return out;
}

json pooled_spectrogram_json(const Spectrogram& s, std::size_t max_frames, std::size_t max_bins) {
  const std::size_t fs = (s.frames + max_frames - 1) / max_frames;
  const std::size_t bs = (s.bins + max_bins - 1) / max_bins;
  const std::size_t frames = (s.frames + fs - 1) / fs;
  const std::size_t bins = (s.bins + bs - 1) / bs;
  json values = json::array();
  for (std::size_t f = 0; f < frames; ++f) {
    json row = json::array();
    for (std::size_t b = 0; b < bins; ++b) {
      double m = 0;
      for (std::size_t ff = f * fs; ff < std::min(s.frames, (f + 1) * fs); ++ff)
        for (std::size_t bb = b * bs; bb < std::min(s.bins, (b + 1) * bs); ++bb) m = std::max(m, s.at(ff, bb));
      row.push_back(m);
    }
    values.push_back(std::move(row));
  }
  return {{"frames", frames},
          {"bins", bins},
          {"frame_hop", s.frame_hop * fs},
          {"bin_hz", s.bin_hz * static_cast<double>(bs)},
          {"source_frames", s.frames},
          {"source_bins", s.bins},
          {"values", std::move(values)}};
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  return httplib::detail::base64_encode(std::string(bytes.begin(), bytes.end()));
}

ProbeService::ProbeService(GeneratorParams params, std::string model_path)
    : params_(std::move(params)), model_path_(std::move(model_path)) {
  params_.validate();
  stats_ = mean_abs_weights(params_);
}

json ProbeService::info() const {
  return {{"model", model_path_}, {"arch", to_json(params_.arch)}};
}

json ProbeService::variables() const {
  json out = json::array();
  for (std::size_t i = 0; i < stats_.variables.size(); ++i) {
    const auto& v = stats_.variables[i];
    out.push_back({{"variable", v.to_string()},
                   {"kind", std::string(to_string(v.kind))},
                   {"index", v.index},
                   {"mean_abs_weight", stats_.mean_abs_weight[i]}});
  }
  return out;
}

VariableRef ProbeService::path_variable(const std::string& kind, const std::string& index) const {
  VariableRef v;
  if (kind == "code") v.kind = VariableKind::code;
  else if (kind == "noise") v.kind = VariableKind::noise;
  else throw ServiceError(404, "unknown variable kind \"" + kind + "\"");
  v.index = parse_index(index, 404, "variable index");
  try {
    v.global_row(params_.arch);
  } catch (const RangeError& e) {
    throw ServiceError(404, e.what());
  }
  return v;
}

json ProbeService::matrix(const std::string& kind, const std::string& index, const std::string& downsample) const {
  const auto v = path_variable(kind, index);
  const std::size_t k = downsample.empty() ? 1 : parse_index(downsample, 400, "downsample");
  const auto fm = extract_weight_matrix(v, params_);
  return {{"variable", v.to_string()},
          {"channels", fm.channels() / std::max<std::size_t>(k, 1)},
          {"timesteps", fm.timesteps()},
          {"downsample", k},
          {"values", downsample_channels(fm, k)}};
}

json ProbeService::profile(const std::string& kind, const std::string& index) const {
  const auto v = path_variable(kind, index);
  return {{"variable", v.to_string()}, {"profile", temporal_profile(v, params_)}};
}

Waveform ProbeService::waveform_for(const json& body) const {
  if (!body.is_object()) throw ValidationError("body: expected object");
  if (body.contains("columns")) return generate_from_splice(splice_spec_from_json(body), params_);
  if (const auto it = body.find("variable"); it != body.end()) {
    if (!it->is_string()) throw ValidationError("variable: expected string like \"code:3\"");
    const auto v = parse_variable_ref(it->get<std::string>());
    WeightMatrixOptions opts;
    if (const auto b = body.find("include_bias"); b != body.end()) {
      if (!b->is_boolean()) throw ValidationError("include_bias: expected boolean");
      opts.include_bias = b->get<bool>();
    }
    return generate_from_weight_matrix(v, params_, opts);
  }
  if (const auto it = body.find("latent"); it != body.end()) {
    return generate_from_latent(latent_from_json(*it, params_.arch), params_);
  }
  if (is_latent(body)) return generate_from_latent(latent_from_json(body, params_.arch), params_);
  throw ValidationError("body: expected a splice (\"columns\"), a \"variable\", or a latent");
}

json ProbeService::generate(const json& body) const { return waveform_json(waveform_for(body)); }

json ProbeService::sweep(const json& body) const {
  const auto spec = splice_spec_from_json(body);
  const auto w = body.find("window");
  if (w == body.end()) throw ValidationError("window: missing");
  if (!is_count(*w)) throw ValidationError("window: expected unsigned integer");
  const auto runs = channel_window_sweep(spec, w->get<std::size_t>(), params_);
  json outputs = json::array();
  for (const auto& r : runs) {
    outputs.push_back({{"start", r.window.start},
                       {"end", r.window.end()},
                       {"num_samples", r.waveform.samples.size()},
                       {"wav_base64", base64_encode(encode_wav(r.waveform))}});
  }
  return {{"window", w->get<std::size_t>()}, {"outputs", std::move(outputs)}};
}

json ProbeService::correlate(const json& body) const {
  if (!body.is_object()) throw ValidationError("body: expected object");
  const auto columns = labeled_columns_from_json(body);
  CorrelationOptions opts;
  if (const auto m = body.find("mode"); m != body.end()) {
    if (!m->is_string()) throw ValidationError("mode: expected string");
    opts.mode = parse_correlation_mode(m->get<std::string>());
  }
  if (const auto l = body.find("log"); l != body.end()) {
    if (!l->is_boolean()) throw ValidationError("log: expected boolean");
    opts.log_spectra = l->get<bool>();
  }
  std::size_t dims = 2;
  if (const auto d = body.find("dims"); d != body.end()) {
    if (!is_count(*d)) throw ValidationError("dims: expected unsigned integer");
    dims = d->get<std::size_t>();
  }
  const auto r = correlate_columns(columns, params_, opts);
  const auto d = to_distance(r);
  return {{"correlation", to_json(r)}, {"distances", to_json(d)}, {"embedding", to_json(classical_mds(d, dims))}};
}

}  // namespace fcprobe::tools

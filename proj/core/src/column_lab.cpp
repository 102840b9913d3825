#include "fcprobe/column_lab.hpp"

#include <algorithm>
#include <string>

namespace fcprobe {

std::vector<float> extract_column(const ColumnRef& ref, const GeneratorParams& params,
                                  bool include_bias) {
  const auto& arch = params.arch;
  const auto w = params.fc_row(ref.variable.global_row(arch));
  if (ref.time_index >= arch.fc_timesteps) {
    throw RangeError("time index " + std::to_string(ref.time_index) + " out of range (T = " +
                     std::to_string(arch.fc_timesteps) + ")");
  }
  const std::size_t C = arch.fc_channels;
  const std::size_t offset = ref.time_index * C;
  std::vector<float> col(w.begin() + offset, w.begin() + offset + C);
  if (include_bias) {
    for (std::size_t c = 0; c < C; ++c) col[c] = params.fc_bias[offset + c] + col[c];
  }
  return col;
}

void validate_mask(std::span<const ChannelRange> ranges, std::size_t channels) {
  std::vector<ChannelRange> sorted(ranges.begin(), ranges.end());
  for (const auto& r : sorted) {
    if (r.start > channels || r.length > channels - r.start) {
      throw ValidationError("channel range [" + std::to_string(r.start) + ", " +
                            std::to_string(r.end()) + ") exceeds " + std::to_string(channels) +
                            " channels");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const ChannelRange& a, const ChannelRange& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].start < sorted[i - 1].end()) {
      throw ValidationError("channel ranges overlap at channel " + std::to_string(sorted[i].start));
    }
  }
}

void apply_channel_mask(FeatureMap& fm, std::span<const ChannelRange> ranges) {
  validate_mask(ranges, fm.channels());
  std::vector<bool> keep(fm.channels(), false);
  for (const auto& r : ranges) {
    std::fill(keep.begin() + static_cast<std::ptrdiff_t>(r.start),
              keep.begin() + static_cast<std::ptrdiff_t>(r.end()), true);
  }
  for (std::size_t c = 0; c < fm.channels(); ++c) {
    if (!keep[c]) std::ranges::fill(fm.row(c), 0.0f);
  }
}

FeatureMap build_splice(const SpliceSpec& spec, const GeneratorParams& params) {
  if (spec.columns.empty()) throw ValidationError("splice needs at least one column");
  const std::size_t C = params.arch.fc_channels;
  if (spec.mask) validate_mask(*spec.mask, C);
  FeatureMap fm(C, spec.columns.size());
  for (std::size_t j = 0; j < spec.columns.size(); ++j) {
    fm.set_column(j, extract_column(spec.columns[j], params, spec.include_bias));
  }
  if (spec.mask) apply_channel_mask(fm, *spec.mask);
  return fm;
}

Waveform generate_from_splice(const SpliceSpec& spec, const GeneratorParams& params) {
  return generate_from_featuremap(build_splice(spec, params), params);
}

std::vector<ChannelRange> channel_windows(std::size_t channels, std::size_t window) {
  if (window == 0 || channels % window != 0) {
    throw ValidationError("window " + std::to_string(window) + " does not divide " +
                          std::to_string(channels) + " channels");
  }
  std::vector<ChannelRange> out;
  for (std::size_t start = 0; start < channels; start += window) out.push_back({start, window});
  return out;
}

std::vector<FeatureMap> window_masked_maps(const SpliceSpec& spec, std::size_t window,
                                           const GeneratorParams& params) {
  const auto windows = channel_windows(params.arch.fc_channels, window);
  SpliceSpec unmasked = spec;
  unmasked.mask.reset();
  const FeatureMap base = build_splice(unmasked, params);
  std::vector<FeatureMap> maps;
  maps.reserve(windows.size());
  for (const auto& w : windows) {
    FeatureMap fm = base;
    apply_channel_mask(fm, std::span<const ChannelRange>(&w, 1));
    maps.push_back(std::move(fm));
  }
  return maps;
}

std::vector<WindowOutput> channel_window_sweep(const SpliceSpec& spec, std::size_t window,
                                               const GeneratorParams& params) {
  const auto windows = channel_windows(params.arch.fc_channels, window);
  auto maps = window_masked_maps(spec, window, params);
  std::vector<WindowOutput> out;
  out.reserve(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    out.push_back({windows[i], generate_from_featuremap(maps[i], params)});
  }
  return out;
}

}  // namespace fcprobe

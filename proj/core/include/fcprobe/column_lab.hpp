#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fcprobe/weight_probe.hpp"

namespace fcprobe {

struct ColumnRef {
  VariableRef variable;
  std::size_t time_index = 0;

  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

// Half-open channel interval [start, start + length).
struct ChannelRange {
  std::size_t start = 0;
  std::size_t length = 0;

  std::size_t end() const { return start + length; }
  friend bool operator==(const ChannelRange&, const ChannelRange&) = default;
};

// Recipe for a manually assembled feature map. An absent mask keeps every
// channel; a present but empty mask keeps none.
struct SpliceSpec {
  std::vector<ColumnRef> columns;
  std::optional<std::vector<ChannelRange>> mask;
  // Add the FC bias column at each column's own time index.
  bool include_bias = false;

  friend bool operator==(const SpliceSpec&, const SpliceSpec&) = default;
};

std::vector<float> extract_column(const ColumnRef& ref, const GeneratorParams& params,
                                  bool include_bias = false);

// Throws ValidationError for ranges outside [0, channels) or overlapping.
void validate_mask(std::span<const ChannelRange> ranges, std::size_t channels);

// Zeroes every channel not covered by ranges, across all time steps.
void apply_channel_mask(FeatureMap& fm, std::span<const ChannelRange> ranges);

FeatureMap build_splice(const SpliceSpec& spec, const GeneratorParams& params);
Waveform generate_from_splice(const SpliceSpec& spec, const GeneratorParams& params);

struct WindowOutput {
  ChannelRange window;
  Waveform waveform;
};

// Consecutive windows [i*window, (i+1)*window) covering all channels.
std::vector<ChannelRange> channel_windows(std::size_t channels, std::size_t window);

// The C/window masked feature maps of a sweep, in window order. Each one keeps
// only its window; any mask already on spec is replaced.
std::vector<FeatureMap> window_masked_maps(const SpliceSpec& spec, std::size_t window,
                                           const GeneratorParams& params);

std::vector<WindowOutput> channel_window_sweep(const SpliceSpec& spec, std::size_t window,
                                               const GeneratorParams& params);

}  // namespace fcprobe

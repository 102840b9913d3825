#include "fcprobe/feature_map.hpp"

#include <string>

#include "fcprobe/errors.hpp"

namespace fcprobe {

FeatureMap::FeatureMap(std::size_t channels, std::size_t timesteps)
    : channels_(channels), timesteps_(timesteps), data_(channels * timesteps, 0.0f) {}

FeatureMap::FeatureMap(std::size_t channels, std::size_t timesteps, std::vector<float> data)
    : channels_(channels), timesteps_(timesteps), data_(std::move(data)) {
  if (data_.size() != channels * timesteps) {
    throw ShapeError("feature map data has " + std::to_string(data_.size()) +
                     " values, expected " + std::to_string(channels) + "x" +
                     std::to_string(timesteps));
  }
}

std::vector<float> FeatureMap::column(std::size_t t) const {
  if (t >= timesteps_) throw RangeError("time index " + std::to_string(t) + " out of range");
  std::vector<float> out(channels_);
  for (std::size_t c = 0; c < channels_; ++c) out[c] = at(c, t);
  return out;
}

void FeatureMap::set_column(std::size_t t, std::span<const float> values) {
  if (t >= timesteps_) throw RangeError("time index " + std::to_string(t) + " out of range");
  if (values.size() != channels_) throw ShapeError("column length does not match channels");
  for (std::size_t c = 0; c < channels_; ++c) at(c, t) = values[c];
}

}  // namespace fcprobe

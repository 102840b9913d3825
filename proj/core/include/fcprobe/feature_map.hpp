#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fcprobe {

// A channels x timesteps grid of activations. Storage is channel-major:
// element (c, t) lives at c * timesteps + t, so each channel row is
// contiguous in time.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(std::size_t channels, std::size_t timesteps);
  FeatureMap(std::size_t channels, std::size_t timesteps, std::vector<float> data);

  std::size_t channels() const { return channels_; }
  std::size_t timesteps() const { return timesteps_; }
  std::size_t size() const { return data_.size(); }

  float& at(std::size_t c, std::size_t t) { return data_[c * timesteps_ + t]; }
  float at(std::size_t c, std::size_t t) const { return data_[c * timesteps_ + t]; }

  std::span<float> row(std::size_t c) { return {data_.data() + c * timesteps_, timesteps_}; }
  std::span<const float> row(std::size_t c) const {
    return {data_.data() + c * timesteps_, timesteps_};
  }

  // Copy of time step t across all channels.
  std::vector<float> column(std::size_t t) const;
  void set_column(std::size_t t, std::span<const float> values);

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t timesteps_ = 0;
  std::vector<float> data_;
};

}  // namespace fcprobe

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcprobe/generator.hpp"

namespace fcprobe {

struct ColumnPrototype {
  std::string label;
  double freq_hz = 0.0;
  double decay = 2.0;
};

// Deterministic stand-in for a trained checkpoint.
//
// Code variable v's column t follows prototype (v + t) % P: a damped sinusoid
// across channels, exp(-decay * c / C) * sin(2 pi freq c / sample_rate), plus
// small seeded jitter. Columns in the first half of the time axis carry full
// amplitude and the rest a quarter of it. Noise variables are uniform in
// [-0.1, 0.1]. Conv kernels use a variance-preserving uniform init.
struct FixtureSpec {
  std::uint64_t seed = 1;
  ArchitectureSpec arch;
  std::vector<ColumnPrototype> prototypes;
};

// Two families, 300 Hz and 2500 Hz, on the ciwgan-timit-9 architecture.
FixtureSpec default_fixture_spec(std::uint64_t seed = 1);

// Throws ValidationError when a prototype frequency is at or above Nyquist.
GeneratorParams make_fixture(const FixtureSpec& spec);

// Prototype index feeding code variable `code` at time step t.
std::size_t fixture_prototype_of(std::size_t code, std::size_t t, std::size_t n_prototypes);

// splitmix64 stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace fcprobe

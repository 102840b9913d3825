#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "fcprobe/analysis.hpp"

namespace fcprobe {

namespace {

// FFTW's planner is not reentrant; execution on a created plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::span<double> input() { return {in_.get(), n_}; }
  void execute() { fftw_execute(plan_); }
  double magnitude(std::size_t bin) const {
    return std::hypot(out_.get()[bin][0], out_.get()[bin][1]);
  }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_ = nullptr;
};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void SpectrogramParams::validate() const {
  if (hop == 0 || hop > win || win > fft_len) {
    throw ValidationError("spectrogram requires 0 < hop <= win <= fft_len");
  }
  if (!is_power_of_two(fft_len)) {
    throw ValidationError("fft_len " + std::to_string(fft_len) + " is not a power of two");
  }
}

Spectrogram spectrogram(const Waveform& w, const SpectrogramParams& params) {
  params.validate();
  if (w.samples.empty()) throw ValidationError("cannot take the spectrogram of an empty waveform");

  const std::size_t len = w.samples.size();
  Spectrogram s;
  s.frames = len >= params.win ? 1 + (len - params.win) / params.hop : 1;
  s.bins = params.fft_len / 2 + 1;
  s.frame_hop = params.hop;
  s.bin_hz = static_cast<double>(w.sample_rate) / static_cast<double>(params.fft_len);
  s.magnitude.assign(s.frames * s.bins, 0.0);

  // Periodic Hann window.
  std::vector<double> window(params.win);
  for (std::size_t n = 0; n < params.win; ++n) {
    window[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                     static_cast<double>(params.win));
  }

  RealFft fft(params.fft_len);
  auto in = fft.input();
  for (std::size_t f = 0; f < s.frames; ++f) {
    std::ranges::fill(in, 0.0);
    const std::size_t start = f * params.hop;
    for (std::size_t n = 0; n < params.win && start + n < len; ++n) {
      in[n] = window[n] * static_cast<double>(w.samples[start + n]);
    }
    fft.execute();
    double* row = s.magnitude.data() + f * s.bins;
    for (std::size_t b = 0; b < s.bins; ++b) row[b] = fft.magnitude(b);
  }
  return s;
}

AveragedSpectrum averaged_spectrum(const Spectrogram& s) {
  if (s.frames == 0 || s.bins == 0) throw ValidationError("spectrogram has no frames");
  std::vector<double> mean(s.bins, 0.0);
  for (std::size_t f = 0; f < s.frames; ++f) {
    const auto row = s.frame(f);
    for (std::size_t b = 0; b < s.bins; ++b) mean[b] += row[b];
  }
  for (double& m : mean) m /= static_cast<double>(s.frames);

  AveragedSpectrum out;
  out.max_hz = s.bin_hz * static_cast<double>(s.bins - 1);
  out.values.resize(kAveragedSpectrumLength);
  if (s.bins == 1) {
    std::ranges::fill(out.values, mean[0]);
    return out;
  }
  // Point j sits at fractional bin j * (bins - 1) / 999.
  const double scale =
      static_cast<double>(s.bins - 1) / static_cast<double>(kAveragedSpectrumLength - 1);
  for (std::size_t j = 0; j < kAveragedSpectrumLength; ++j) {
    const double x = static_cast<double>(j) * scale;
    const std::size_t lo = std::min(static_cast<std::size_t>(x), s.bins - 2);
    const double frac = x - static_cast<double>(lo);
    out.values[j] = mean[lo] * (1.0 - frac) + mean[lo + 1] * frac;
  }
  return out;
}

}  // namespace fcprobe

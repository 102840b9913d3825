#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fcprobe/generator.hpp"

namespace fcprobe {

// ---------------------------------------------------------------------------
// Spectra

struct SpectrogramParams {
  std::size_t win = 256;
  std::size_t hop = 64;
  std::size_t fft_len = 2048;

  // 0 < hop <= win <= fft_len, fft_len a power of two.
  void validate() const;
};

// Hann-windowed magnitude STFT, frames x bins, bins = fft_len / 2 + 1.
struct Spectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::size_t frame_hop = 0;
  double bin_hz = 0.0;
  std::vector<double> magnitude;  // frame-major

  double at(std::size_t frame, std::size_t bin) const { return magnitude[frame * bins + bin]; }
  std::span<const double> frame(std::size_t f) const { return {magnitude.data() + f * bins, bins}; }
};

inline constexpr std::size_t kAveragedSpectrumLength = 1000;

// Time-mean magnitude, linearly resampled to exactly 1000 points over
// [0, max_hz].
struct AveragedSpectrum {
  std::vector<double> values;
  double max_hz = 0.0;
};

// Frames = 1 + floor((len - win) / hop) when len >= win, otherwise a single
// zero-padded frame. Throws ValidationError on an empty waveform.
Spectrogram spectrogram(const Waveform& w, const SpectrogramParams& params = {});
AveragedSpectrum averaged_spectrum(const Spectrogram& s);

// ---------------------------------------------------------------------------
// Correlation and distances

struct LabeledVector {
  std::string label;
  std::vector<double> values;
};

// Square matrix with one label per row/column, stored row-major.
struct LabeledMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;

  std::size_t size() const { return labels.size(); }
  double& at(std::size_t i, std::size_t j) { return values[i * labels.size() + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }

  // Throws ValidationError if not square or any |a_ij - a_ji| > tol.
  void check_symmetric(double tol = 1e-9) const;
};

// Throws DegenerateInputError naming the first zero-variance vector.
LabeledMatrix pearson_correlation_matrix(std::span<const LabeledVector> vectors);

// d = 1 - r with an exact zero diagonal.
LabeledMatrix to_distance(const LabeledMatrix& correlation);

// ---------------------------------------------------------------------------
// Classical MDS

struct EigenDecomposition {
  std::vector<double> eigenvalues;   // descending
  std::vector<double> eigenvectors;  // column j pairs with eigenvalues[j], n x n row-major
  std::size_t sweeps = 0;
  bool converged = false;
};

// Cyclic Jacobi for a symmetric n x n row-major matrix. Stops once the
// largest off-diagonal magnitude drops below tol or after max_sweeps.
EigenDecomposition jacobi_eigen(std::vector<double> a, std::size_t n, double tol = 1e-12,
                                std::size_t max_sweeps = 100);

struct Embedding {
  std::vector<std::string> labels;
  std::size_t dims = 0;
  std::vector<double> coords;       // labels.size() x dims, row-major
  std::vector<double> eigenvalues;  // all eigenvalues of B, descending

  double at(std::size_t i, std::size_t d) const { return coords[i * dims + d]; }
};

// Torgerson scaling: B = -1/2 J D^2 J, top `dims` eigenvectors scaled by
// sqrt(max(lambda, 0)). Each eigenvector's largest-magnitude entry is made
// positive.
Embedding classical_mds(const LabeledMatrix& distances, std::size_t dims = 2);

// ---------------------------------------------------------------------------
// CSV (RFC 4180). Matrices: header row of labels, then one row of values per
// label. Embeddings: header "label,dim1,...", one row per point.

void write_csv(std::ostream& os, const LabeledMatrix& m);
void write_csv(std::ostream& os, const Embedding& e);
void write_csv(std::ostream& os, const Spectrogram& s);
LabeledMatrix read_labeled_matrix_csv(std::istream& is);

std::vector<std::vector<std::string>> parse_csv(std::istream& is);
std::string csv_escape(const std::string& field);

}  // namespace fcprobe

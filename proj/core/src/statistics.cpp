#include <algorithm>
#include <cmath>
#include <string>

#include "fcprobe/analysis.hpp"

namespace fcprobe {

void LabeledMatrix::check_symmetric(double tol) const {
  const std::size_t n = labels.size();
  if (values.size() != n * n) {
    throw ValidationError("matrix has " + std::to_string(values.size()) + " values for " +
                          std::to_string(n) + " labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(at(i, j) - at(j, i)) > tol) {
        throw ValidationError("matrix is not symmetric at (" + labels[i] + ", " + labels[j] + ")");
      }
    }
  }
}

LabeledMatrix pearson_correlation_matrix(std::span<const LabeledVector> vectors) {
  if (vectors.size() < 2) throw ValidationError("correlation needs at least two vectors");
  const std::size_t len = vectors.front().values.size();
  if (len < 2) throw ValidationError("correlation needs vectors of length >= 2");

  const std::size_t n = vectors.size();
  std::vector<std::vector<double>> centered(n);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = vectors[i];
    if (v.values.size() != len) {
      throw ValidationError("vector \"" + v.label + "\" has length " +
                            std::to_string(v.values.size()) + ", expected " + std::to_string(len));
    }
    double mean = 0.0;
    for (double x : v.values) mean += x;
    mean /= static_cast<double>(len);
    centered[i].resize(len);
    double ss = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      centered[i][k] = v.values[k] - mean;
      ss += centered[i][k] * centered[i][k];
    }
    if (!(ss > 0.0)) {
      throw DegenerateInputError(v.label, "vector \"" + v.label + "\" has zero variance");
    }
    norms[i] = std::sqrt(ss);
  }

  LabeledMatrix m;
  for (const auto& v : vectors) m.labels.push_back(v.label);
  m.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < len; ++k) dot += centered[i][k] * centered[j][k];
      const double r = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
      m.at(i, j) = r;
      m.at(j, i) = r;
    }
  }
  return m;
}

LabeledMatrix to_distance(const LabeledMatrix& correlation) {
  correlation.check_symmetric();
  LabeledMatrix d = correlation;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d.at(i, j) = i == j ? 0.0 : std::clamp(1.0 - correlation.at(i, j), 0.0, 2.0);
    }
  }
  return d;
}

}  // namespace fcprobe

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fcprobe/analysis.hpp"

namespace fcprobe {

namespace {

double max_off_diagonal(const std::vector<double>& a, std::size_t n) {
  double m = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::fabs(a[p * n + q]));
  }
  return m;
}

}  // namespace

EigenDecomposition jacobi_eigen(std::vector<double> a, std::size_t n, double tol,
                                std::size_t max_sweeps) {
  if (a.size() != n * n) throw ShapeError("jacobi_eigen: matrix is not n x n");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  EigenDecomposition out;
  while (true) {
    if (max_off_diagonal(a, n) < tol) {
      out.converged = true;
      break;
    }
    if (out.sweeps == max_sweeps) break;
    ++out.sweeps;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = a[p * n + k] = c * akp - s * akq;
          a[k * n + q] = a[q * n + k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a[order[j] * n + order[j]];
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors[k * n + j] = v[k * n + order[j]];
  }
  return out;
}

Embedding classical_mds(const LabeledMatrix& distances, std::size_t dims) {
  distances.check_symmetric();
  const std::size_t n = distances.size();
  if (n == 0) throw ValidationError("MDS needs at least one point");
  if (dims < 1 || dims > n) {
    throw ValidationError("MDS dims must be in [1, " + std::to_string(n) + "]");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(distances.at(i, i)) > 1e-9) {
      throw ValidationError("distance matrix diagonal is not zero at " + distances.labels[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (distances.at(i, j) < 0.0 || !std::isfinite(distances.at(i, j))) {
        throw ValidationError("distance matrix has a negative or non-finite entry at (" +
                              distances.labels[i] + ", " + distances.labels[j] + ")");
      }
    }
  }

  // B = -1/2 J D^2 J via row, column and grand means of D^2.
  std::vector<double> sq(n * n);
  for (std::size_t k = 0; k < n * n; ++k) sq[k] = distances.values[k] * distances.values[k];
  std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row_mean[i] += sq[i * n + j];
      col_mean[j] += sq[i * n + j];
      grand += sq[i * n + j];
    }
  }
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_mean[i] /= dn;
    col_mean[i] /= dn;
  }
  grand /= dn * dn;
  std::vector<double> b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b[i * n + j] = -0.5 * (sq[i * n + j] - row_mean[i] - col_mean[j] + grand);
    }
  }

  const auto eig = jacobi_eigen(std::move(b), n);

  Embedding e;
  e.labels = distances.labels;
  e.dims = dims;
  e.eigenvalues = eig.eigenvalues;
  e.coords.assign(n * dims, 0.0);
  for (std::size_t d = 0; d < dims; ++d) {
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::fabs(eig.eigenvectors[k * n + d]) > std::fabs(eig.eigenvectors[pivot * n + d])) {
        pivot = k;
      }
    }
    const double sign = eig.eigenvectors[pivot * n + d] < 0.0 ? -1.0 : 1.0;
    const double scale = std::sqrt(std::max(eig.eigenvalues[d], 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      e.coords[k * dims + d] = sign * scale * eig.eigenvectors[k * n + d];
    }
  }
  return e;
}

}  // namespace fcprobe

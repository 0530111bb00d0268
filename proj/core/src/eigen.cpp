// SPDX-License-Identifier: Apache-2.0
//
// mos - model order selection for antenna array snapshots
// Copyright (C) 2026 The mos authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mos/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mos/errors.hpp"

namespace mos {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kHermitianTolerance = 1e-9;

// Cyclic Jacobi on a dense symmetric matrix stored row-major. Rotations
// drive the off-diagonal mass to zero; quadratic convergence makes the
// sweep budget generous. Eigenvectors accumulate in `vecs` if non-null.
void jacobi_symmetric(std::vector<double>& a, int n, std::vector<double>* vecs) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  if (vecs) {
    vecs->assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) (*vecs)[static_cast<std::size_t>(i) * n + i] = 1.0;
  }

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
  if (scale == 0.0) return;

  const double stop = 1e-15 * scale;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= stop) return;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= stop) continue;

        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = at(p, p);
        const double aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(p, k) = at(k, p);
          at(k, q) = s * akp + c * akq;
          at(q, k) = at(k, q);
        }
        if (vecs) {
          for (int k = 0; k < n; ++k) {
            double& vkp = (*vecs)[static_cast<std::size_t>(k) * n + p];
            double& vkq = (*vecs)[static_cast<std::size_t>(k) * n + q];
            const double tp = vkp;
            vkp = c * tp - s * vkq;
            vkq = s * tp + c * vkq;
          }
        }
      }
    }
  }
  throw numeric_error("jacobi_symmetric: sweep budget exhausted");
}

}  // namespace

EigenDecomposition hermitian_eig(const CMat& matrix, bool with_vectors) {
  const int m = matrix.rows();
  if (matrix.cols() != m) throw config_error("hermitian_eig: matrix must be square");
  const double scale = std::max(1.0, max_abs(matrix));
  if (hermiticity_error(matrix) > kHermitianTolerance * scale)
    throw data_error("hermitian_eig: input is not Hermitian within tolerance");
  const CMat c = symmetrize_hermitian(matrix);

  // Real symmetric embedding E = [[X, -Z], [Z, X]] of C = X + iZ. Each
  // eigenvalue of C appears twice in E; (x; y) maps back to x + iy.
  const int n = 2 * m;
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double re = c(i, j).real();
      const double im = c(i, j).imag();
      e[static_cast<std::size_t>(i) * n + j] = re;
      e[static_cast<std::size_t>(i) * n + (j + m)] = -im;
      e[static_cast<std::size_t>(i + m) * n + j] = im;
      e[static_cast<std::size_t>(i + m) * n + (j + m)] = re;
    }
  }

  std::vector<double> vecs;
  jacobi_symmetric(e, n, with_vectors ? &vecs : nullptr);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return e[static_cast<std::size_t>(lhs) * n + lhs] > e[static_cast<std::size_t>(rhs) * n + rhs];
  });

  EigenDecomposition out;
  out.values.resize(static_cast<std::size_t>(m));
  if (with_vectors) out.vectors = CMat(m, m);
  for (int j = 0; j < m; ++j) {
    const int col = order[static_cast<std::size_t>(2 * j)];  // one of each duplicated pair
    out.values[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(col) * n + col];
    if (with_vectors) {
      for (int i = 0; i < m; ++i) {
        const double re = vecs[static_cast<std::size_t>(i) * n + col];
        const double im = vecs[static_cast<std::size_t>(i + m) * n + col];
        out.vectors(i, j) = {re, im};
      }
    }
  }
  return out;
}

EigenSpectrum eigen_spectrum(const CMat& covariance) {
  EigenDecomposition dec = hermitian_eig(covariance, false);
  EigenSpectrum spectrum;
  spectrum.values = std::move(dec.values);

  double top = 0.0;
  for (double v : spectrum.values) top = std::max(top, std::abs(v));
  // Negatives cannot occur for exact covariances; they and values at
  // roundoff scale are snapped to exact zero so rank-deficient inputs
  // produce genuinely flat tails.
  const double zero_floor = 1e-14 * top;
  for (double& v : spectrum.values)
    if (v <= zero_floor) v = 0.0;
  return spectrum;
}

}  // namespace mos

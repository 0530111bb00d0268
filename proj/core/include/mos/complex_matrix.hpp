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

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "mos/errors.hpp"

namespace mos {

using cplx = std::complex<double>;

/// Dense complex matrix, column-major. Sized for this domain (antenna counts
/// and snapshot blocks), not for large scale linear algebra.
class CMat {
 public:
  CMat() = default;

  CMat(int rows, int cols) : rows_(rows), cols_(cols), data_(check_size(rows, cols)) {}

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  cplx& operator()(int r, int c) noexcept { return data_[static_cast<std::size_t>(c) * rows_ + r]; }
  const cplx& operator()(int r, int c) const noexcept {
    return data_[static_cast<std::size_t>(c) * rows_ + r];
  }

  std::span<cplx> column(int c) noexcept {
    return {data_.data() + static_cast<std::size_t>(c) * rows_, static_cast<std::size_t>(rows_)};
  }
  std::span<const cplx> column(int c) const noexcept {
    return {data_.data() + static_cast<std::size_t>(c) * rows_, static_cast<std::size_t>(rows_)};
  }

  std::span<cplx> flat() noexcept { return data_; }
  std::span<const cplx> flat() const noexcept { return data_; }

  bool operator==(const CMat& other) const = default;

 private:
  static std::size_t check_size(int rows, int cols) {
    if (rows < 0 || cols < 0) throw config_error("matrix dimensions must be non-negative");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

/// Plain matrix product a*b. Dimension mismatch is a configuration error.
inline CMat multiply(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows())
    throw config_error("matrix product dimension mismatch: " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()));
  CMat out(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    for (int k = 0; k < a.cols(); ++k) {
      const cplx bkj = b(k, j);
      if (bkj == 0.0) continue;
      for (int i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  }
  return out;
}

inline CMat hermitian_transpose(const CMat& a) {
  CMat out(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) out(j, i) = std::conj(a(i, j));
  return out;
}

inline double max_abs(const CMat& a) noexcept {
  double m = 0.0;
  for (const cplx& v : a.flat()) m = std::max(m, std::abs(v));
  return m;
}

inline double frobenius_norm(const CMat& a) noexcept {
  double s = 0.0;
  for (const cplx& v : a.flat()) s += std::norm(v);
  return std::sqrt(s);
}

/// max_ij |a_ij - conj(a_ji)| over a square matrix.
inline double hermiticity_error(const CMat& a) {
  if (a.rows() != a.cols()) throw config_error("hermiticity check requires a square matrix");
  double m = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i <= j; ++i) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

/// (a + a^H) / 2.
inline CMat symmetrize_hermitian(const CMat& a) {
  if (a.rows() != a.cols()) throw config_error("symmetrization requires a square matrix");
  CMat out(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return out;
}

inline bool all_finite(const CMat& a) noexcept {
  for (const cplx& v : a.flat())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace mos

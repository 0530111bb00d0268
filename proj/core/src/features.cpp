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

#include "mos/features.hpp"

#include <string>

#include "mos/errors.hpp"

namespace mos {

namespace {
constexpr double kHermitianTolerance = 1e-9;
}

std::string_view to_string(FeatureKind kind) noexcept {
  return kind == FeatureKind::StackedIq ? "iq" : "cov";
}

FeatureKind feature_kind_from_string(std::string_view name) {
  if (name == "iq") return FeatureKind::StackedIq;
  if (name == "cov") return FeatureKind::Covariance;
  throw config_error("unknown feature kind '" + std::string(name) + "' (expected iq or cov)");
}

std::size_t feature_length(FeatureKind kind, int num_antennas, int num_snapshots) noexcept {
  const auto m = static_cast<std::size_t>(num_antennas);
  const auto n = static_cast<std::size_t>(num_snapshots);
  return kind == FeatureKind::StackedIq ? 2 * m * n : m * m;
}

CMat sample_covariance(const CMat& snapshots) {
  const int m = snapshots.rows();
  const int n = snapshots.cols();
  if (n < 1) throw config_error("sample_covariance: at least one snapshot required");
  CMat c(m, m);
  for (int t = 0; t < n; ++t) {
    const auto y = snapshots.column(t);
    for (int j = 0; j < m; ++j) {
      const cplx yj_conj = std::conj(y[static_cast<std::size_t>(j)]);
      for (int i = 0; i < m; ++i) c(i, j) += y[static_cast<std::size_t>(i)] * yj_conj;
    }
  }
  const double inv_n = 1.0 / n;
  for (cplx& v : c.flat()) v *= inv_n;
  return c;
}

FeatureVector stack_real_imag(const CMat& snapshots) {
  FeatureVector f;
  f.kind = FeatureKind::StackedIq;
  f.num_antennas = snapshots.rows();
  f.num_snapshots = snapshots.cols();
  f.values.resize(feature_length(f.kind, f.num_antennas, f.num_snapshots));
  featurize_into(snapshots, f.kind, f.values);
  return f;
}

FeatureVector covariance_features(const CMat& covariance) {
  const int m = covariance.rows();
  if (covariance.cols() != m) throw config_error("covariance_features: matrix must be square");
  const double scale = std::max(1.0, max_abs(covariance));
  if (hermiticity_error(covariance) > kHermitianTolerance * scale)
    throw data_error("covariance_features: input is not Hermitian within tolerance");

  FeatureVector f;
  f.kind = FeatureKind::Covariance;
  f.num_antennas = m;
  f.num_snapshots = 0;
  f.values.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));

  const CMat c = symmetrize_hermitian(covariance);
  std::size_t pos = 0;
  for (int i = 0; i < m; ++i) f.values[pos++] = c(i, i).real();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      f.values[pos++] = c(i, j).real();
      f.values[pos++] = c(i, j).imag();
    }
  }
  return f;
}

FeatureVector featurize(const Sample& sample, FeatureKind kind) {
  if (kind == FeatureKind::StackedIq) return stack_real_imag(sample.snapshots);
  FeatureVector f = covariance_features(sample_covariance(sample.snapshots));
  f.num_snapshots = sample.snapshots.cols();
  return f;
}

void featurize_into(const CMat& snapshots, FeatureKind kind, std::span<double> out) {
  const int m = snapshots.rows();
  const int n = snapshots.cols();
  if (out.size() != feature_length(kind, m, n))
    throw contract_error("featurize_into: output buffer has wrong length");

  if (kind == FeatureKind::StackedIq) {
    const auto half = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    std::size_t pos = 0;
    for (int t = 0; t < n; ++t) {
      for (const cplx& v : snapshots.column(t)) {
        out[pos] = v.real();
        out[half + pos] = v.imag();
        ++pos;
      }
    }
    return;
  }

  const FeatureVector f = covariance_features(sample_covariance(snapshots));
  std::copy(f.values.begin(), f.values.end(), out.begin());
}

}  // namespace mos

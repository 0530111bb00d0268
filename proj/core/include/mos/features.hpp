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

#include <span>
#include <string_view>
#include <vector>

#include "mos/complex_matrix.hpp"
#include "mos/scenario.hpp"

namespace mos {

/// The two real-valued network input encodings.
///  - StackedIq: real parts of the snapshot block, then imaginary parts,
///    both in column-major snapshot order; length 2*M*N.
///  - Covariance: sample covariance diagonal (real), then for every upper
///    triangle entry (i < j) in row-major order the pair (Re, Im);
///    length M^2, independent of N.
enum class FeatureKind { StackedIq, Covariance };

std::string_view to_string(FeatureKind kind) noexcept;
FeatureKind feature_kind_from_string(std::string_view name);  // "iq" | "cov"

struct FeatureVector {
  std::vector<double> values;
  FeatureKind kind = FeatureKind::Covariance;
  int num_antennas = 0;   // M provenance
  int num_snapshots = 0;  // N provenance (0 when built from a bare covariance)
};

/// Expected feature length for a given shape.
std::size_t feature_length(FeatureKind kind, int num_antennas, int num_snapshots) noexcept;

/// C = (1/N) sum_t y(t) y(t)^H. Hermitian positive semidefinite.
CMat sample_covariance(const CMat& snapshots);

FeatureVector stack_real_imag(const CMat& snapshots);

/// Real parameterization of a Hermitian matrix. The input must be Hermitian
/// within 1e-9 (relative to its largest entry); it is symmetrized by
/// averaging with its adjoint before extraction.
FeatureVector covariance_features(const CMat& covariance);

/// Applies the preprocessing selected by `kind` to a sample.
FeatureVector featurize(const Sample& sample, FeatureKind kind);

/// Hot-path variant writing into a caller-provided buffer of
/// feature_length(kind, M, N) doubles.
void featurize_into(const CMat& snapshots, FeatureKind kind, std::span<double> out);

}  // namespace mos

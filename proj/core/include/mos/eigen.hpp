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

#include <vector>

#include "mos/complex_matrix.hpp"

namespace mos {

/// Raw Hermitian eigendecomposition, eigenvalues descending and unclamped.
struct EigenDecomposition {
  std::vector<double> values;
  CMat vectors;  // column j pairs with values[j]; empty unless requested
};

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations on
/// the 2M x 2M real symmetric embedding [[Re, -Im], [Im, Re]]. The input
/// must be Hermitian within 1e-9 of its largest entry. Throws numeric_error
/// if the sweep budget is exhausted (does not happen for well-formed input).
EigenDecomposition hermitian_eig(const CMat& matrix, bool with_vectors = false);

/// Eigenvalues of a Hermitian covariance prepared for model order criteria:
/// sorted descending, with negatives and numerically-zero values (below
/// 1e-14 of the largest magnitude) clamped to exactly 0.
struct EigenSpectrum {
  std::vector<double> values;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

EigenSpectrum eigen_spectrum(const CMat& covariance);

}  // namespace mos

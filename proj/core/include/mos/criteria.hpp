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

#include "mos/eigen.hpp"

namespace mos {

enum class IcVariant { Aic, Mdl };

struct IcResult {
  std::vector<double> scores;  // indexed by candidate order k = 0 .. M-1
  int estimate = 0;            // argmin of scores, ties toward smaller k
  bool degenerate = false;     // all-zero input spectrum
};

/// Information-criterion model order selection from covariance eigenvalues,
/// in the classical closed form of Wax & Kailath, "Detection of signals by
/// information theoretic criteria", IEEE Trans. ASSP 33(2), 1985:
///
///   with a(k), g(k) the arithmetic and geometric means of the M-k smallest
///   eigenvalues and Lambda(k) = N (M-k) ln(a(k)/g(k)),
///
///   AIC(k) = 2 Lambda(k) + 2 k (2M - k)
///   MDL(k) = Lambda(k) + (1/2) k (2M - k) ln N
///
/// The estimate is the k minimizing the score. Zero eigenvalues are floored
/// at 1e-300 times the largest before taking logs, which keeps scores finite
/// and collapses g(k) for candidate orders below the true rank.
IcResult information_criterion(const EigenSpectrum& spectrum, int num_snapshots,
                               IcVariant variant);

}  // namespace mos

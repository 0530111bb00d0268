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

#include "mos/steering.hpp"

#include <cmath>
#include <numbers>

namespace mos {

std::vector<cplx> steering_vector(double azimuth, int num_antennas, double radius_over_lambda) {
  if (num_antennas < 1) throw config_error("steering_vector: num_antennas must be >= 1");
  std::vector<cplx> a(static_cast<std::size_t>(num_antennas));
  const double two_pi = 2.0 * std::numbers::pi;
  for (int m = 0; m < num_antennas; ++m) {
    const double phase =
        -two_pi * radius_over_lambda * std::cos(azimuth - two_pi * m / num_antennas);
    a[static_cast<std::size_t>(m)] = std::polar(1.0, phase);
  }
  return a;
}

CMat steering_matrix(std::span<const double> azimuths, const ScenarioConfig& cfg) {
  for (double theta : azimuths)
    if (!std::isfinite(theta)) throw data_error("steering_matrix: azimuth must be finite");
  CMat a(cfg.num_antennas, static_cast<int>(azimuths.size()));
  for (int l = 0; l < a.cols(); ++l) {
    const auto col = steering_vector(azimuths[static_cast<std::size_t>(l)], cfg.num_antennas,
                                     cfg.radius_over_lambda);
    auto dst = a.column(l);
    for (int m = 0; m < cfg.num_antennas; ++m) dst[static_cast<std::size_t>(m)] = col[static_cast<std::size_t>(m)];
  }
  return a;
}

CMat tridiagonal_calibration(int size, double off_diag) {
  if (size < 1) throw config_error("tridiagonal_calibration: size must be >= 1");
  CMat f(size, size);
  for (int i = 0; i < size; ++i) {
    f(i, i) = 1.0;
    if (i + 1 < size) {
      f(i, i + 1) = off_diag;
      f(i + 1, i) = off_diag;
    }
  }
  return f;
}

CMat apply_calibration(const CMat& manifold, const CMat& calibration) {
  if (calibration.rows() != calibration.cols() || calibration.cols() != manifold.rows())
    throw config_error("apply_calibration: calibration must be square with side matching the manifold rows");
  return multiply(calibration, manifold);
}

}  // namespace mos

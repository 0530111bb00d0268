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

#include "mos/criteria.hpp"

#include <cmath>

#include "mos/errors.hpp"

namespace mos {

IcResult information_criterion(const EigenSpectrum& spectrum, int num_snapshots,
                               IcVariant variant) {
  const int m = spectrum.size();
  if (m < 1) throw config_error("information_criterion: empty spectrum");
  if (num_snapshots < 1) throw config_error("information_criterion: num_snapshots must be >= 1");
  for (int i = 0; i + 1 < m; ++i)
    if (spectrum.values[static_cast<std::size_t>(i)] < spectrum.values[static_cast<std::size_t>(i) + 1])
      throw data_error("information_criterion: spectrum must be sorted descending");
  for (double v : spectrum.values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw data_error("information_criterion: spectrum entries must be finite and >= 0");

  IcResult result;
  result.scores.assign(static_cast<std::size_t>(m), 0.0);

  const double top = spectrum.values.front();
  if (top <= 0.0) {
    // All-zero spectrum carries no information; report the parsimonious
    // order and flag the input as degenerate.
    result.estimate = 0;
    result.degenerate = true;
    return result;
  }

  const double floor = 1e-300 * top;
  std::vector<double> lam(spectrum.values.begin(), spectrum.values.end());
  for (double& v : lam) v = std::max(v, floor);

  // Suffix sums over the M-k smallest eigenvalues.
  std::vector<double> sum(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<double> log_sum(static_cast<std::size_t>(m) + 1, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    sum[static_cast<std::size_t>(i)] = sum[static_cast<std::size_t>(i) + 1] + lam[static_cast<std::size_t>(i)];
    log_sum[static_cast<std::size_t>(i)] =
        log_sum[static_cast<std::size_t>(i) + 1] + std::log(lam[static_cast<std::size_t>(i)]);
  }

  const double n = num_snapshots;
  for (int k = 0; k < m; ++k) {
    const int tail = m - k;
    const double arith = sum[static_cast<std::size_t>(k)] / tail;
    const double log_likelihood = n * (tail * std::log(arith) - log_sum[static_cast<std::size_t>(k)]);
    const double free_params = static_cast<double>(k) * (2 * m - k);
    const double score = variant == IcVariant::Aic
                             ? 2.0 * log_likelihood + 2.0 * free_params
                             : log_likelihood + 0.5 * free_params * std::log(n);
    result.scores[static_cast<std::size_t>(k)] = score;
    if (score < result.scores[static_cast<std::size_t>(result.estimate)]) result.estimate = k;
  }
  return result;
}

}  // namespace mos

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

#include "mos/sampling.hpp"

#include <numbers>

#include "mos/steering.hpp"

namespace mos {

Sample draw_sample(const ScenarioConfig& cfg, int label, Rng& rng) {
  cfg.validate();
  if (label < 0 || label > cfg.max_order)
    throw config_error("draw_sample: label must lie in [0, max_order]");

  Sample sample;
  sample.label = label;
  sample.azimuths.resize(static_cast<std::size_t>(label));
  for (double& theta : sample.azimuths) theta = rng.uniform(0.0, 2.0 * std::numbers::pi);

  sample.snr = cfg.snr.draw(rng);
  const double noise_var = 1.0 / sample.snr;

  CMat manifold = steering_matrix(sample.azimuths, cfg);
  if (cfg.calibration) manifold = apply_calibration(manifold, *cfg.calibration);

  const int m = cfg.num_antennas;
  const int n = cfg.num_snapshots;
  sample.snapshots = CMat(m, n);
  std::vector<cplx> symbols(static_cast<std::size_t>(label));
  for (int t = 0; t < n; ++t) {
    for (cplx& s : symbols) s = rng.complex_normal(1.0);
    auto y = sample.snapshots.column(t);
    for (int i = 0; i < m; ++i) {
      cplx acc = 0.0;
      for (int l = 0; l < label; ++l) acc += manifold(i, l) * symbols[static_cast<std::size_t>(l)];
      y[static_cast<std::size_t>(i)] = acc + rng.complex_normal(noise_var);
    }
  }
  return sample;
}

std::vector<int> balanced_labels(int num_classes, std::size_t count, Rng& shuffle_rng) {
  std::vector<int> labels(count);
  for (std::size_t i = 0; i < count; ++i)
    labels[i] = static_cast<int>(i % static_cast<std::size_t>(num_classes));
  shuffle_rng.shuffle(std::span<int>(labels));
  return labels;
}

Sample dataset_sample(const ScenarioConfig& cfg, int label, std::uint64_t dataset_seed,
                      std::uint64_t index) {
  Rng rng = Rng::stream(dataset_seed, StreamPurpose::DatasetSample, index);
  return draw_sample(cfg, label, rng);
}

std::vector<Sample> draw_balanced_dataset(const ScenarioConfig& cfg, std::size_t count,
                                          std::uint64_t dataset_seed) {
  cfg.validate();
  Rng shuffle_rng = Rng::stream(dataset_seed, StreamPurpose::DatasetShuffle, 0);
  const std::vector<int> labels = balanced_labels(cfg.num_classes(), count, shuffle_rng);

  std::vector<Sample> samples(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    samples[idx] = dataset_sample(cfg, labels[idx], dataset_seed, idx);
  }
  return samples;
}

}  // namespace mos

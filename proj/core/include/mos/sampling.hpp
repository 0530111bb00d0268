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

#include <cstdint>
#include <vector>

#include "mos/scenario.hpp"

namespace mos {

/// Draws one labeled sample with the given model order:
///   - label azimuths, each uniform on [0, 2 pi)
///   - one SNR per the scenario law, noise variance sigma_n^2 = 1/SNR
///   - source symbols s(t) i.i.d. CN(0, 1), noise n(t) i.i.d. CN(0, sigma_n^2)
///   - column t of the snapshot block is A_eff s(t) + n(t), where A_eff is
///     the (optionally calibrated) steering matrix.
/// The draw order is fixed, so one generator yields reproducible samples.
Sample draw_sample(const ScenarioConfig& cfg, int label, Rng& rng);

/// Shuffled, class-balanced label assignment for `count` samples over
/// classes 0..num_classes-1; per-class counts differ by at most one.
std::vector<int> balanced_labels(int num_classes, std::size_t count, Rng& shuffle_rng);

/// Class-balanced dataset of `count` samples in shuffled label order.
/// Content depends only on (cfg, count, dataset_seed): sample i uses its own
/// generator stream derived from the seed and i, so generation may be
/// parallelized without changing the result.
std::vector<Sample> draw_balanced_dataset(const ScenarioConfig& cfg, std::size_t count,
                                          std::uint64_t dataset_seed);

/// Sample i of the dataset that draw_balanced_dataset(cfg, count, seed)
/// produces, without materializing the rest (labels must come from
/// balanced_labels with the matching shuffle stream).
Sample dataset_sample(const ScenarioConfig& cfg, int label, std::uint64_t dataset_seed,
                      std::uint64_t index);

}  // namespace mos

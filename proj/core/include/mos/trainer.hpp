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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mos/mlp.hpp"
#include "mos/sampling.hpp"

namespace mos {

struct TrainConfig {
  std::uint64_t steps = 3000;
  int batch_size = 64;
  double learning_rate = 1e-3;
  FeatureKind feature_kind = FeatureKind::Covariance;
  ScenarioConfig scenario;
  std::vector<int> hidden_dims = {256, 256, 256};
  std::uint64_t eval_every = 500;  // 0 disables periodic evaluation
  std::size_t eval_size = 4000;
  std::uint64_t seed = 0;

  void validate() const;
  std::vector<int> layer_dims() const;
};

struct TrainLogEntry {
  std::uint64_t step = 0;
  double loss = 0.0;
  double eval_accuracy = 0.0;
};

struct TrainResult {
  MlpParams params;
  std::vector<TrainLogEntry> log;
  std::uint64_t steps_completed = 0;
  bool diverged = false;       // loss went non-finite; params hold the last finite state
  std::string diagnostic;
};

/// Training batch for one offline step: class-balanced labels in shuffled
/// order, every sample drawn from its own stream keyed by the global sample
/// index (step * batch_size + i), so no realization is ever reused across
/// steps and generation parallelism cannot change the data.
std::vector<Sample> draw_training_batch(const TrainConfig& cfg, std::uint64_t step);

/// Offline training with continuous sampling: every Adam step consumes a
/// fresh balanced batch from the scenario; there is no fixed training set
/// and no epochs. Glorot-initialized from the config seed.
TrainResult train_offline(const TrainConfig& cfg);

/// Fine-tunes a network on a fixed measured dataset: performs num_batches
/// Adam updates with batches of 64 drawn from the set (shuffled passes,
/// which samples with replacement across passes once num_batches * 64
/// exceeds the set size). Optimizer state starts fresh; the pretrained
/// Adam state is not carried over. num_batches == 0 returns init unchanged.
MlpParams train_online(const MlpParams& init, std::span<const Sample> measured,
                       std::uint64_t num_batches, double learning_rate, std::uint64_t seed);

/// Training log CSV: comment header lines, then `step,loss,eval_accuracy`.
void write_training_log_csv(const std::filesystem::path& path,
                            std::span<const TrainLogEntry> log,
                            std::span<const std::string> comments);

}  // namespace mos

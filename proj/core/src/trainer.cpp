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

#include "mos/trainer.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "mos/errors.hpp"
#include "mos/evaluate.hpp"

namespace mos {

namespace {

constexpr int kOnlineBatchSize = 64;

// Gathers the feature rows of a batch into a row-major matrix.
void featurize_batch(std::span<const Sample> batch, FeatureKind kind, std::vector<double>& x,
                     int input_dim) {
  x.resize(batch.size() * static_cast<std::size_t>(input_dim));
#pragma omp parallel for schedule(static) if (batch.size() > 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(batch.size()); ++i) {
    const Sample& s = batch[static_cast<std::size_t>(i)];
    featurize_into(s.snapshots, kind,
                   std::span<double>(x.data() + static_cast<std::size_t>(i) * input_dim,
                                     static_cast<std::size_t>(input_dim)));
  }
}

}  // namespace

void TrainConfig::validate() const {
  scenario.validate();
  if (steps < 1) throw config_error("TrainConfig: steps must be >= 1");
  if (batch_size < 1) throw config_error("TrainConfig: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw config_error("TrainConfig: learning_rate must be positive");
  if (hidden_dims.empty()) throw config_error("TrainConfig: at least one hidden layer required");
  for (int d : hidden_dims)
    if (d < 1) throw config_error("TrainConfig: hidden dims must be >= 1");
  if (eval_every > 0 && eval_size < 1)
    throw config_error("TrainConfig: eval_size must be >= 1 when eval_every is set");
}

std::vector<int> TrainConfig::layer_dims() const {
  std::vector<int> dims;
  dims.push_back(static_cast<int>(
      feature_length(feature_kind, scenario.num_antennas, scenario.num_snapshots)));
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(scenario.num_classes());
  return dims;
}

std::vector<Sample> draw_training_batch(const TrainConfig& cfg, std::uint64_t step) {
  Rng order_rng = Rng::stream(cfg.seed, StreamPurpose::TrainBatchOrder, step);
  const std::vector<int> labels =
      balanced_labels(cfg.scenario.num_classes(), static_cast<std::size_t>(cfg.batch_size),
                      order_rng);
  std::vector<Sample> batch(labels.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(batch.size()); ++i) {
    const std::uint64_t sample_index =
        step * static_cast<std::uint64_t>(cfg.batch_size) + static_cast<std::uint64_t>(i);
    Rng rng = Rng::stream(cfg.seed, StreamPurpose::TrainSample, sample_index);
    batch[static_cast<std::size_t>(i)] =
        draw_sample(cfg.scenario, labels[static_cast<std::size_t>(i)], rng);
  }
  return batch;
}

TrainResult train_offline(const TrainConfig& cfg) {
  cfg.validate();

  TrainResult result;
  Rng init_rng = Rng::stream(cfg.seed, StreamPurpose::NetworkInit, 0);
  result.params = glorot_uniform_init(cfg.layer_dims(), cfg.feature_kind, init_rng);
  result.params.meta = {cfg.scenario.num_antennas, cfg.scenario.num_snapshots,
                        cfg.scenario.max_order, 0};

  std::vector<Sample> eval_set;
  if (cfg.eval_every > 0) {
    const std::uint64_t eval_seed = Rng::stream(cfg.seed, StreamPurpose::TrainEvalSet, 0).next();
    eval_set = draw_balanced_dataset(cfg.scenario, cfg.eval_size, eval_seed);
  }

  AdamState adam = AdamState::zeros_like(result.params);
  const AdamConfig adam_cfg{.learning_rate = cfg.learning_rate};
  Gradients grads = Gradients::zeros_like(result.params);
  ForwardCache cache;
  std::vector<double> inputs;
  std::vector<int> labels(static_cast<std::size_t>(cfg.batch_size));

  for (std::uint64_t step = 0; step < cfg.steps; ++step) {
    const std::vector<Sample> batch = draw_training_batch(cfg, step);
    for (std::size_t i = 0; i < batch.size(); ++i) labels[i] = batch[i].label;
    featurize_batch(batch, cfg.feature_kind, inputs, result.params.input_dim());

    forward_batch(result.params, inputs, cfg.batch_size, cache);
    const double loss = mean_cross_entropy(cache, labels);
    if (!std::isfinite(loss)) {
      // Parameters have not been touched by this step, so they are the last
      // finite state.
      result.diverged = true;
      result.diagnostic = "training loss became non-finite at step " + std::to_string(step + 1);
      break;
    }

    backward_batch(result.params, cache, labels, grads);
    adam_step(result.params, grads, adam, adam_cfg);
    result.steps_completed = step + 1;

    const bool log_now =
        cfg.eval_every > 0 &&
        ((step + 1) % cfg.eval_every == 0 || step + 1 == cfg.steps);
    if (log_now) {
      result.params.meta.steps = result.steps_completed;
      const EvalReport rep = evaluate(result.params, eval_set);
      result.log.push_back({step + 1, loss, rep.overall_accuracy});
    }
  }
  result.params.meta.steps = result.steps_completed;
  return result;
}

MlpParams train_online(const MlpParams& init, std::span<const Sample> measured,
                       std::uint64_t num_batches, double learning_rate, std::uint64_t seed) {
  init.validate();
  if (num_batches == 0) return init;
  if (measured.empty()) throw config_error("train_online: measured dataset must be non-empty");
  if (!(learning_rate > 0.0)) throw config_error("train_online: learning_rate must be positive");

  const int input_dim = init.input_dim();
  for (const Sample& s : measured) {
    if (feature_length(init.feature_kind, s.snapshots.rows(), s.snapshots.cols()) !=
        static_cast<std::size_t>(input_dim))
      throw contract_error("train_online: measured sample shape does not match network input");
    if (s.label < 0 || s.label >= init.output_dim())
      throw contract_error("train_online: measured label outside network classes");
  }

  // Featurize the fixed set once.
  std::vector<double> features(measured.size() * static_cast<std::size_t>(input_dim));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(measured.size()); ++i)
    featurize_into(measured[static_cast<std::size_t>(i)].snapshots, init.feature_kind,
                   std::span<double>(features.data() + static_cast<std::size_t>(i) * input_dim,
                                     static_cast<std::size_t>(input_dim)));

  MlpParams params = init;
  AdamState adam = AdamState::zeros_like(params);  // fresh optimizer state
  const AdamConfig adam_cfg{.learning_rate = learning_rate};
  Gradients grads = Gradients::zeros_like(params);
  ForwardCache cache;

  std::vector<std::size_t> order(measured.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t pos = order.size();  // force a shuffle before the first batch
  std::uint64_t epoch = 0;

  std::vector<double> inputs(static_cast<std::size_t>(kOnlineBatchSize) * input_dim);
  std::vector<int> labels(kOnlineBatchSize);

  for (std::uint64_t t = 0; t < num_batches; ++t) {
    for (int i = 0; i < kOnlineBatchSize; ++i) {
      if (pos >= order.size()) {
        Rng shuffle_rng = Rng::stream(seed, StreamPurpose::OnlineShuffle, epoch++);
        shuffle_rng.shuffle(std::span<std::size_t>(order));
        pos = 0;
      }
      const std::size_t src = order[pos++];
      std::copy_n(features.data() + src * static_cast<std::size_t>(input_dim), input_dim,
                  inputs.data() + static_cast<std::size_t>(i) * input_dim);
      labels[static_cast<std::size_t>(i)] = measured[src].label;
    }
    forward_batch(params, inputs, kOnlineBatchSize, cache);
    const double loss = mean_cross_entropy(cache, labels);
    if (!std::isfinite(loss))
      throw numeric_error("train_online: loss became non-finite at batch " + std::to_string(t + 1));
    backward_batch(params, cache, labels, grads);
    adam_step(params, grads, adam, adam_cfg);
  }
  params.meta.steps += num_batches;
  return params;
}

void write_training_log_csv(const std::filesystem::path& path,
                            std::span<const TrainLogEntry> log,
                            std::span<const std::string> comments) {
  std::ofstream out(path);
  if (!out) throw io_error("write_training_log_csv: cannot open " + path.string());
  for (const std::string& line : comments) out << "# " << line << "\n";
  out << "step,loss,eval_accuracy\n";
  char buf[96];
  for (const TrainLogEntry& e : log) {
    std::snprintf(buf, sizeof buf, "%llu,%.9g,%.6f", static_cast<unsigned long long>(e.step),
                  e.loss, e.eval_accuracy);
    out << buf << "\n";
  }
  if (!out) throw io_error("write_training_log_csv: write failed for " + path.string());
}

}  // namespace mos

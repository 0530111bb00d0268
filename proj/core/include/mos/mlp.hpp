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
#include <span>
#include <vector>

#include "mos/features.hpp"
#include "mos/rng.hpp"

namespace mos {

// Dense feedforward classifier: ReLU hidden layers, softmax head, trained
// with cross-entropy and Adam. Double precision throughout.

struct MlpMeta {
  int num_antennas = 0;
  int num_snapshots_train = 0;
  int max_order = 0;
  std::uint64_t steps = 0;  // training-step counter
};

struct MlpParams {
  std::vector<int> layer_dims;               // [in, hidden..., out]
  std::vector<std::vector<double>> weights;  // layer l: dims[l+1] x dims[l], row-major
  std::vector<std::vector<double>> biases;   // layer l: dims[l+1]
  FeatureKind feature_kind = FeatureKind::Covariance;
  MlpMeta meta;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
  std::size_t layer_count() const noexcept { return weights.size(); }
  std::size_t parameter_count() const noexcept;

  /// Checks dims/weights/biases consistency and finiteness.
  void validate() const;
};

/// Weights uniform on +-sqrt(6 / (fan_in + fan_out)), biases zero.
MlpParams glorot_uniform_init(const std::vector<int>& layer_dims, FeatureKind kind, Rng& rng);

/// Intermediate state of a (batched) forward pass, kept for backprop.
/// activations[0] is the input batch, activations[l] the post-ReLU output
/// of hidden layer l; all row-major batch x dim.
struct ForwardCache {
  std::vector<std::vector<double>> activations;
  std::vector<double> logits;  // batch x out
  std::vector<double> probs;   // batch x out
  int batch = 0;
  std::vector<int> dims;  // layer shape the cache was built for
};

/// Batched forward pass; inputs is batch x input_dim row-major.
/// Softmax uses max-subtraction, so logits up to ~1e300 stay finite.
void forward_batch(const MlpParams& params, std::span<const double> inputs, int batch,
                   ForwardCache& cache);

/// Single-sample forward; checks feature kind and length. Returns the class
/// distribution; pass a cache to keep state for backward().
std::vector<double> forward(const MlpParams& params, const FeatureVector& input,
                            ForwardCache* cache = nullptr);

/// -ln probs[label].
double cross_entropy(std::span<const double> probs, int label);

/// Numerically fused form: logsumexp(logits) - logits[label].
double cross_entropy_from_logits(std::span<const double> logits, int label);

/// Mean fused cross-entropy of a cached batch.
double mean_cross_entropy(const ForwardCache& cache, std::span<const int> labels);

struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  static Gradients zeros_like(const MlpParams& params);
};

/// Mean gradient over the cached batch. The output-layer delta is
/// probs - onehot(label); ReLU uses subgradient 0 at 0.
void backward_batch(const MlpParams& params, const ForwardCache& cache,
                    std::span<const int> labels, Gradients& grads);

/// Per-sample gradient for a batch-1 cache.
Gradients backward(const MlpParams& params, const ForwardCache& cache, int label);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<std::vector<double>> m_weights, v_weights;
  std::vector<std::vector<double>> m_biases, v_biases;
  std::uint64_t step = 0;

  static AdamState zeros_like(const MlpParams& params);
};

/// Standard Adam update with bias correction; increments state.step.
void adam_step(MlpParams& params, const Gradients& grads, AdamState& state,
               const AdamConfig& cfg = {});

/// Argmax with ties broken toward the smaller class index.
int argmax_class(std::span<const double> values);

/// MAP decision: argmax of forward probabilities.
int predict(const MlpParams& params, const FeatureVector& input);

/// Hot-path predict reusing caller-owned cache buffers.
int predict_with_cache(const MlpParams& params, std::span<const double> input,
                       ForwardCache& cache);

}  // namespace mos

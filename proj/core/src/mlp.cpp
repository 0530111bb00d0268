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

#include "mos/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mos/errors.hpp"

namespace mos {

namespace {

// Four-accumulator dot product. The fixed summation tree keeps results
// bitwise reproducible while letting the compiler vectorize without
// reassociation flags.
double dot(const double* a, const double* b, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

void axpy(double alpha, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// z[batch x out] = x[batch x in] * w[out x in]^T + bias
void linear_forward(std::span<const double> x, std::span<const double> w,
                    std::span<const double> bias, int batch, int in, int out,
                    std::span<double> z) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(batch) * out * in > 200000)
  for (int b = 0; b < batch; ++b) {
    const double* xb = x.data() + static_cast<std::size_t>(b) * in;
    double* zb = z.data() + static_cast<std::size_t>(b) * out;
    for (int o = 0; o < out; ++o)
      zb[o] = bias[static_cast<std::size_t>(o)] + dot(xb, w.data() + static_cast<std::size_t>(o) * in, in);
  }
}

void check_label(int label, int out) {
  if (label < 0 || label >= out)
    throw contract_error("class label " + std::to_string(label) + " outside [0, " +
                         std::to_string(out - 1) + "]");
}

void check_cache(const MlpParams& params, const ForwardCache& cache) {
  if (cache.batch < 1 || cache.dims != params.layer_dims ||
      cache.activations.size() != params.layer_count())
    throw contract_error("forward cache does not match these parameters");
}

}  // namespace

std::size_t MlpParams::parameter_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
  return n;
}

void MlpParams::validate() const {
  if (layer_dims.size() < 2) throw config_error("network needs at least input and output layers");
  for (int d : layer_dims)
    if (d < 1) throw config_error("layer dimensions must be >= 1");
  if (weights.size() != layer_dims.size() - 1 || biases.size() != weights.size())
    throw config_error("layer count mismatch between dims and parameters");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const auto rows = static_cast<std::size_t>(layer_dims[l + 1]);
    const auto cols = static_cast<std::size_t>(layer_dims[l]);
    if (weights[l].size() != rows * cols || biases[l].size() != rows)
      throw config_error("parameter shapes do not match layer dimensions");
    for (double v : weights[l])
      if (!std::isfinite(v)) throw data_error("non-finite network weight");
    for (double v : biases[l])
      if (!std::isfinite(v)) throw data_error("non-finite network bias");
  }
}

MlpParams glorot_uniform_init(const std::vector<int>& layer_dims, FeatureKind kind, Rng& rng) {
  if (layer_dims.size() < 2) throw config_error("network needs at least input and output layers");
  for (int d : layer_dims)
    if (d < 1) throw config_error("layer dimensions must be >= 1");

  MlpParams params;
  params.layer_dims = layer_dims;
  params.feature_kind = kind;
  params.weights.resize(layer_dims.size() - 1);
  params.biases.resize(layer_dims.size() - 1);
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const int fan_in = layer_dims[l];
    const int fan_out = layer_dims[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    params.weights[l].resize(static_cast<std::size_t>(fan_in) * fan_out);
    for (double& w : params.weights[l]) w = rng.uniform(-bound, bound);
    params.biases[l].assign(static_cast<std::size_t>(fan_out), 0.0);
  }
  return params;
}

void forward_batch(const MlpParams& params, std::span<const double> inputs, int batch,
                   ForwardCache& cache) {
  const int in = params.input_dim();
  const int out = params.output_dim();
  if (batch < 1) throw contract_error("forward_batch: batch must be >= 1");
  if (inputs.size() != static_cast<std::size_t>(batch) * in)
    throw contract_error("forward_batch: input length does not match batch x input_dim");

  const std::size_t layers = params.layer_count();
  cache.batch = batch;
  cache.dims = params.layer_dims;
  cache.activations.resize(layers);
  cache.activations[0].assign(inputs.begin(), inputs.end());

  for (std::size_t l = 0; l + 1 < layers; ++l) {
    const int nin = params.layer_dims[l];
    const int nout = params.layer_dims[l + 1];
    std::vector<double>& act = cache.activations[l + 1];
    act.resize(static_cast<std::size_t>(batch) * nout);
    linear_forward(cache.activations[l], params.weights[l], params.biases[l], batch, nin, nout,
                   act);
    for (double& v : act) v = v > 0.0 ? v : 0.0;  // ReLU
  }

  cache.logits.resize(static_cast<std::size_t>(batch) * out);
  linear_forward(cache.activations[layers - 1], params.weights[layers - 1],
                 params.biases[layers - 1], batch, params.layer_dims[layers - 1], out,
                 cache.logits);

  cache.probs.resize(cache.logits.size());
  for (int b = 0; b < batch; ++b) {
    const double* z = cache.logits.data() + static_cast<std::size_t>(b) * out;
    double* p = cache.probs.data() + static_cast<std::size_t>(b) * out;
    double zmax = z[0];
    for (int o = 1; o < out; ++o) zmax = std::max(zmax, z[o]);
    double sum = 0.0;
    for (int o = 0; o < out; ++o) {
      p[o] = std::exp(z[o] - zmax);
      sum += p[o];
    }
    const double inv = 1.0 / sum;
    for (int o = 0; o < out; ++o) p[o] *= inv;
  }
}

std::vector<double> forward(const MlpParams& params, const FeatureVector& input,
                            ForwardCache* cache) {
  if (input.kind != params.feature_kind)
    throw contract_error("feature kind does not match the network");
  if (input.values.size() != static_cast<std::size_t>(params.input_dim()))
    throw contract_error("feature length " + std::to_string(input.values.size()) +
                         " does not match network input dim " +
                         std::to_string(params.input_dim()));
  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;
  forward_batch(params, input.values, 1, c);
  return c.probs;
}

double cross_entropy(std::span<const double> probs, int label) {
  check_label(label, static_cast<int>(probs.size()));
  return -std::log(probs[static_cast<std::size_t>(label)]);
}

double cross_entropy_from_logits(std::span<const double> logits, int label) {
  check_label(label, static_cast<int>(logits.size()));
  double zmax = logits[0];
  for (double z : logits) zmax = std::max(zmax, z);
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - zmax);
  return (std::log(sum) + zmax) - logits[static_cast<std::size_t>(label)];
}

double mean_cross_entropy(const ForwardCache& cache, std::span<const int> labels) {
  if (labels.size() != static_cast<std::size_t>(cache.batch))
    throw contract_error("label count does not match cached batch size");
  const int out = cache.dims.back();
  double sum = 0.0;
  for (int b = 0; b < cache.batch; ++b) {
    const std::span<const double> logits{cache.logits.data() + static_cast<std::size_t>(b) * out,
                                         static_cast<std::size_t>(out)};
    sum += cross_entropy_from_logits(logits, labels[static_cast<std::size_t>(b)]);
  }
  return sum / cache.batch;
}

Gradients Gradients::zeros_like(const MlpParams& params) {
  Gradients g;
  g.weights.resize(params.layer_count());
  g.biases.resize(params.layer_count());
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    g.weights[l].assign(params.weights[l].size(), 0.0);
    g.biases[l].assign(params.biases[l].size(), 0.0);
  }
  return g;
}

void backward_batch(const MlpParams& params, const ForwardCache& cache,
                    std::span<const int> labels, Gradients& grads) {
  check_cache(params, cache);
  const int batch = cache.batch;
  if (labels.size() != static_cast<std::size_t>(batch))
    throw contract_error("label count does not match cached batch size");
  const int out = params.output_dim();
  for (int lab : labels) check_label(lab, out);

  if (grads.weights.size() != params.layer_count()) grads = Gradients::zeros_like(params);

  // Output delta (probs - onehot) carries the 1/batch factor so every
  // downstream gradient is the batch mean.
  const double inv_batch = 1.0 / batch;
  std::vector<double> delta(cache.probs.begin(), cache.probs.end());
  for (int b = 0; b < batch; ++b) {
    double* db = delta.data() + static_cast<std::size_t>(b) * out;
    db[labels[static_cast<std::size_t>(b)]] -= 1.0;
    for (int o = 0; o < out; ++o) db[o] *= inv_batch;
  }

  std::vector<double> next_delta;
  for (std::size_t l = params.layer_count(); l-- > 0;) {
    const int nin = params.layer_dims[l];
    const int nout = params.layer_dims[l + 1];
    const std::vector<double>& below = cache.activations[l];

    std::vector<double>& dw = grads.weights[l];
    std::vector<double>& db = grads.biases[l];
    dw.assign(static_cast<std::size_t>(nin) * nout, 0.0);
    db.assign(static_cast<std::size_t>(nout), 0.0);

    // dW[o] = sum_b delta[b][o] * below[b]; parallel rows stay disjoint.
#pragma omp parallel for schedule(static) if (static_cast<long long>(nout) * nin * batch > 200000)
    for (int o = 0; o < nout; ++o) {
      double* dwo = dw.data() + static_cast<std::size_t>(o) * nin;
      double acc = 0.0;
      for (int b = 0; b < batch; ++b) {
        const double d = delta[static_cast<std::size_t>(b) * nout + o];
        if (d == 0.0) continue;
        acc += d;
        axpy(d, below.data() + static_cast<std::size_t>(b) * nin, dwo, nin);
      }
      db[static_cast<std::size_t>(o)] = acc;
    }

    if (l == 0) break;

    // delta_below[b] = (delta[b] * W) masked by ReLU support.
    next_delta.assign(static_cast<std::size_t>(batch) * nin, 0.0);
#pragma omp parallel for schedule(static) if (static_cast<long long>(nout) * nin * batch > 200000)
    for (int b = 0; b < batch; ++b) {
      const double* deltab = delta.data() + static_cast<std::size_t>(b) * nout;
      double* nd = next_delta.data() + static_cast<std::size_t>(b) * nin;
      for (int o = 0; o < nout; ++o) {
        const double d = deltab[o];
        if (d == 0.0) continue;
        axpy(d, params.weights[l].data() + static_cast<std::size_t>(o) * nin, nd, nin);
      }
      const double* act = below.data() + static_cast<std::size_t>(b) * nin;
      for (int i = 0; i < nin; ++i)
        if (act[i] <= 0.0) nd[i] = 0.0;  // subgradient 0 at the kink
    }
    delta.swap(next_delta);
  }
}

Gradients backward(const MlpParams& params, const ForwardCache& cache, int label) {
  if (cache.batch != 1) throw contract_error("backward: cache holds a batch, use backward_batch");
  Gradients grads;
  const int labels[1] = {label};
  backward_batch(params, cache, labels, grads);
  return grads;
}

AdamState AdamState::zeros_like(const MlpParams& params) {
  AdamState s;
  s.m_weights.resize(params.layer_count());
  s.v_weights.resize(params.layer_count());
  s.m_biases.resize(params.layer_count());
  s.v_biases.resize(params.layer_count());
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    s.m_weights[l].assign(params.weights[l].size(), 0.0);
    s.v_weights[l].assign(params.weights[l].size(), 0.0);
    s.m_biases[l].assign(params.biases[l].size(), 0.0);
    s.v_biases[l].assign(params.biases[l].size(), 0.0);
  }
  return s;
}

namespace {

void adam_update(std::span<double> p, std::span<const double> g, std::span<double> m,
                 std::span<double> v, const AdamConfig& cfg, double bias1, double bias2) {
  const std::size_t n = p.size();
#pragma omp parallel for schedule(static) if (n > 100000)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto k = static_cast<std::size_t>(i);
    m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * g[k];
    v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * g[k] * g[k];
    const double mhat = m[k] / bias1;
    const double vhat = v[k] / bias2;
    p[k] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
  }
}

}  // namespace

void adam_step(MlpParams& params, const Gradients& grads, AdamState& state,
               const AdamConfig& cfg) {
  if (grads.weights.size() != params.layer_count() ||
      state.m_weights.size() != params.layer_count())
    throw contract_error("adam_step: gradient or state shape mismatch");

  state.step += 1;
  const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    if (grads.weights[l].size() != params.weights[l].size() ||
        grads.biases[l].size() != params.biases[l].size())
      throw contract_error("adam_step: gradient shape mismatch at layer " + std::to_string(l));
    adam_update(params.weights[l], grads.weights[l], state.m_weights[l], state.v_weights[l], cfg,
                bias1, bias2);
    adam_update(params.biases[l], grads.biases[l], state.m_biases[l], state.v_biases[l], cfg,
                bias1, bias2);
  }
}

int argmax_class(std::span<const double> values) {
  if (values.empty()) throw contract_error("argmax_class: empty input");
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
  return best;
}

int predict(const MlpParams& params, const FeatureVector& input) {
  return argmax_class(forward(params, input));
}

int predict_with_cache(const MlpParams& params, std::span<const double> input,
                       ForwardCache& cache) {
  forward_batch(params, input, 1, cache);
  return argmax_class(cache.probs);
}

}  // namespace mos

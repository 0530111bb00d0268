// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: sample generation, preprocessing,
// the Hermitian eigensolver and the training step.

#include <benchmark/benchmark.h>

#include "mos/criteria.hpp"
#include "mos/eigen.hpp"
#include "mos/features.hpp"
#include "mos/sampling.hpp"
#include "mos/steering.hpp"
#include "mos/trainer.hpp"

namespace {

mos::ScenarioConfig desk_scenario() {
  mos::ScenarioConfig cfg;
  cfg.num_antennas = 9;
  cfg.num_snapshots = 10;
  cfg.max_order = 3;
  return cfg;
}

void BM_SteeringMatrix(benchmark::State& state) {
  const mos::ScenarioConfig cfg = desk_scenario();
  const std::vector<double> azimuths{0.3, 1.7, 4.2};
  for (auto _ : state) benchmark::DoNotOptimize(mos::steering_matrix(azimuths, cfg));
}
BENCHMARK(BM_SteeringMatrix);

void BM_DrawSample(benchmark::State& state) {
  const mos::ScenarioConfig cfg = desk_scenario();
  std::uint64_t i = 0;
  for (auto _ : state) {
    mos::Rng rng = mos::Rng::stream(1, mos::StreamPurpose::DatasetSample, i++);
    benchmark::DoNotOptimize(mos::draw_sample(cfg, 2, rng));
  }
}
BENCHMARK(BM_DrawSample);

void BM_SampleCovariance(benchmark::State& state) {
  const mos::ScenarioConfig cfg = desk_scenario();
  mos::Rng rng = mos::Rng::stream(2, mos::StreamPurpose::DatasetSample, 0);
  const mos::Sample s = mos::draw_sample(cfg, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mos::sample_covariance(s.snapshots));
}
BENCHMARK(BM_SampleCovariance);

void BM_CovarianceFeatures(benchmark::State& state) {
  const mos::ScenarioConfig cfg = desk_scenario();
  mos::Rng rng = mos::Rng::stream(3, mos::StreamPurpose::DatasetSample, 0);
  const mos::Sample s = mos::draw_sample(cfg, 2, rng);
  std::vector<double> buf(81);
  for (auto _ : state) {
    mos::featurize_into(s.snapshots, mos::FeatureKind::Covariance, buf);
    benchmark::DoNotOptimize(buf.data());
  }
}
BENCHMARK(BM_CovarianceFeatures);

void BM_HermitianEig9(benchmark::State& state) {
  const mos::ScenarioConfig cfg = desk_scenario();
  mos::Rng rng = mos::Rng::stream(4, mos::StreamPurpose::DatasetSample, 0);
  const mos::CMat c = mos::sample_covariance(mos::draw_sample(cfg, 2, rng).snapshots);
  for (auto _ : state) benchmark::DoNotOptimize(mos::eigen_spectrum(c));
}
BENCHMARK(BM_HermitianEig9);

void BM_InformationCriterion(benchmark::State& state) {
  const mos::ScenarioConfig cfg = desk_scenario();
  mos::Rng rng = mos::Rng::stream(5, mos::StreamPurpose::DatasetSample, 0);
  const mos::EigenSpectrum spectrum =
      mos::eigen_spectrum(mos::sample_covariance(mos::draw_sample(cfg, 2, rng).snapshots));
  for (auto _ : state)
    benchmark::DoNotOptimize(mos::information_criterion(spectrum, 10, mos::IcVariant::Mdl));
}
BENCHMARK(BM_InformationCriterion);

void BM_ForwardBatch64(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  mos::Rng rng(6);
  const mos::MlpParams params = mos::glorot_uniform_init({81, width, width, width, 4},
                                                         mos::FeatureKind::Covariance, rng);
  std::vector<double> inputs(64 * 81);
  for (double& v : inputs) v = rng.normal_pair().first;
  mos::ForwardCache cache;
  for (auto _ : state) {
    mos::forward_batch(params, inputs, 64, cache);
    benchmark::DoNotOptimize(cache.probs.data());
  }
}
BENCHMARK(BM_ForwardBatch64)->Arg(256)->Arg(1024);

void BM_TrainStep(benchmark::State& state) {
  mos::TrainConfig cfg;
  cfg.scenario = desk_scenario();
  cfg.hidden_dims = {static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                     static_cast<int>(state.range(0))};
  cfg.seed = 7;
  mos::Rng init = mos::Rng::stream(cfg.seed, mos::StreamPurpose::NetworkInit, 0);
  mos::MlpParams params =
      mos::glorot_uniform_init(cfg.layer_dims(), mos::FeatureKind::Covariance, init);
  mos::AdamState adam = mos::AdamState::zeros_like(params);
  mos::Gradients grads = mos::Gradients::zeros_like(params);
  mos::ForwardCache cache;

  std::uint64_t step = 0;
  std::vector<double> inputs(64 * 81);
  std::vector<int> labels(64);
  for (auto _ : state) {
    const std::vector<mos::Sample> batch = mos::draw_training_batch(cfg, step++);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      labels[i] = batch[i].label;
      mos::featurize_into(batch[i].snapshots, mos::FeatureKind::Covariance,
                          std::span<double>(inputs.data() + i * 81, 81));
    }
    mos::forward_batch(params, inputs, 64, cache);
    mos::backward_batch(params, cache, labels, grads);
    mos::adam_step(params, grads, adam);
    benchmark::DoNotOptimize(params.weights[0].data());
  }
}
BENCHMARK(BM_TrainStep)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

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
#include <string>
#include <vector>

#include "mos/evaluate.hpp"
#include "mos/trainer.hpp"

namespace mos {

// Experiment runner reproducing the four studies (accuracy table, confusion
// matrices, SNR sweep, snapshot sweep, online adaptation curve) as CSV
// artifacts with seeded reproducibility. The desk profile keeps runtimes in
// CI range; the paper profile matches the published scale.

enum class Profile { Desk, Paper };

Profile profile_from_string(std::string_view name);  // "desk" | "paper"
std::string_view to_string(Profile profile) noexcept;

/// Resolved experiment parameters.
struct ExperimentProfile {
  int hidden_width = 256;
  std::uint64_t train_steps = 3000;
  int batch_size = 64;
  double learning_rate = 1e-3;
  std::uint64_t eval_every = 500;
  std::size_t eval_size = 4000;

  std::size_t table_test_size = 40000;
  std::vector<double> snr_grid_db;
  std::size_t snr_test_size = 10000;
  std::vector<int> snapshot_grid;
  std::size_t snapshot_test_size = 10000;
  std::vector<std::uint64_t> online_batch_counts;
  std::size_t online_test_size = 10000;
  // Update budget for a measured set of d batches: min(online_epochs * d,
  // online_update_cap). The data amount is the swept variable; the
  // optimization budget is capped by the largest sweep point.
  std::uint64_t online_epochs = 50;
  std::uint64_t online_update_cap = 1000;

  double calibration_off_diag = 0.25;
};

ExperimentProfile resolve_profile(Profile profile);

struct ExperimentSpec {
  Profile profile = Profile::Desk;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";

  // Optional overrides (0 / empty keeps the profile value); used by small
  // integration tests and exploratory runs.
  std::uint64_t steps_override = 0;
  int width_override = 0;
  std::size_t test_size_override = 0;
  int num_snapshots = 10;

  ExperimentProfile resolved() const;
  /// Base data model: ideal UCA, M = 9, R/lambda = 1, Lmax = 3,
  /// SNR uniform on the dB scale over [1, 1e3].
  ScenarioConfig base_scenario() const;
  /// Canonical description string hashed into every CSV header.
  std::string config_string() const;
};

/// Trains the requested network or loads it from the cache file the same
/// configuration produced earlier (config-hash keyed, stored in out_dir).
MlpParams train_or_load_network(const ExperimentSpec& spec, const ScenarioConfig& scenario,
                                FeatureKind kind, const std::string& tag);

/// Shared artifacts of the accuracy-table study: both networks trained at
/// N = 10 plus all four methods evaluated on one shared test set.
struct TableArtifacts {
  EvalReport covnet, compnet, aic, mdl;
};

TableArtifacts compute_table_artifacts(const ExperimentSpec& spec);

struct TableResult {
  TableArtifacts reports;
  std::filesystem::path csv_path;
};

/// Accuracy table rows {overall, class 0..Lmax} x {CovNet, CompNet, AIC, MDL}.
TableResult run_accuracy_table(const ExperimentSpec& spec);

struct ConfusionResult {
  EvalReport covnet, mdl;
  std::filesystem::path covnet_csv, mdl_csv;
};

/// Per-true-class normalized confusion matrices for CovNet and MDL.
ConfusionResult run_confusion(const ExperimentSpec& spec);

struct SnrSweepResult {
  std::vector<double> snr_db;
  std::vector<double> covnet, aic, mdl;  // accuracy per grid point
  std::filesystem::path csv_path;
};

SnrSweepResult run_snr_sweep(const ExperimentSpec& spec);

struct SnapshotSweepResult {
  std::vector<int> snapshots;
  std::vector<double> matched, cross_n10, aic, mdl;
  std::filesystem::path csv_path;
};

/// Matched CovNet (N_train = N) vs the classical criteria per grid N, plus
/// the N_train = 10 CovNet evaluated across all N (covariance features do
/// not depend on N).
SnapshotSweepResult run_snapshot_sweep(const ExperimentSpec& spec);

struct OnlineCurveResult {
  std::vector<std::uint64_t> batch_counts;
  std::vector<double> pretrained, random_init;  // accuracy per batch count
  double aic_ref = 0.0, mdl_ref = 0.0, full_ref = 0.0;
  std::filesystem::path csv_path;
};

/// Adaptation to the tridiagonally calibrated array: fine-tunes the ideal
/// pretrained CovNet (and a random init) on measured sets of 64 * d samples,
/// against AIC/MDL and a fully trained calibrated CovNet as references.
OnlineCurveResult run_online_curve(const ExperimentSpec& spec);

}  // namespace mos

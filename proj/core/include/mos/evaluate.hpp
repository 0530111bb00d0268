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

#include "mos/criteria.hpp"
#include "mos/mlp.hpp"
#include "mos/scenario.hpp"

namespace mos {

/// Accuracy summary plus confusion counts; rows are true labels, columns
/// predictions.
struct EvalReport {
  std::size_t n_test = 0;
  double overall_accuracy = 0.0;
  std::vector<double> per_class_accuracy;
  std::vector<std::vector<std::size_t>> confusion;

  /// Counts above the diagonal (predicted order larger than true).
  std::size_t overfit_mass() const noexcept;
  /// Counts below the diagonal.
  std::size_t underfit_mass() const noexcept;
};

/// Confusion tally; mergeable so evaluation can fan out over threads or
/// sample chunks without affecting the result.
class EvalAccumulator {
 public:
  explicit EvalAccumulator(int num_classes);

  void add(int true_label, int predicted);
  void merge(const EvalAccumulator& other);
  std::size_t total() const noexcept { return total_; }
  EvalReport report() const;

 private:
  std::vector<std::vector<std::size_t>> counts_;
  std::size_t total_ = 0;
};

/// Network prediction for one sample (preprocessing chosen by the
/// checkpoint's feature kind).
int predict_sample(const MlpParams& params, const Sample& sample);

/// AIC/MDL estimate from the sample's covariance eigenvalues, clamped to
/// [0, max_order].
int classical_estimate(IcVariant variant, const Sample& sample, int max_order);

EvalReport evaluate(const MlpParams& params, std::span<const Sample> testset);

EvalReport evaluate_classical(IcVariant variant, std::span<const Sample> testset, int max_order);

/// Report CSV: comment lines, `true_label,pred_0..pred_Lmax` count rows,
/// then overall_accuracy / class_k_accuracy / n_test summary rows.
void write_eval_report_csv(const std::filesystem::path& path, const EvalReport& report,
                           std::span<const std::string> comments);

}  // namespace mos

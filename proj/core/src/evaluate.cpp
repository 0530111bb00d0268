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

#include "mos/evaluate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <fstream>

#include "mos/errors.hpp"
#include "mos/features.hpp"

namespace mos {

std::size_t EvalReport::overfit_mass() const noexcept {
  std::size_t mass = 0;
  for (std::size_t t = 0; t < confusion.size(); ++t)
    for (std::size_t p = t + 1; p < confusion[t].size(); ++p) mass += confusion[t][p];
  return mass;
}

std::size_t EvalReport::underfit_mass() const noexcept {
  std::size_t mass = 0;
  for (std::size_t t = 0; t < confusion.size(); ++t)
    for (std::size_t p = 0; p < t; ++p) mass += confusion[t][p];
  return mass;
}

EvalAccumulator::EvalAccumulator(int num_classes) {
  if (num_classes < 1) throw config_error("EvalAccumulator: need at least one class");
  counts_.assign(static_cast<std::size_t>(num_classes),
                 std::vector<std::size_t>(static_cast<std::size_t>(num_classes), 0));
}

void EvalAccumulator::add(int true_label, int predicted) {
  const int n = static_cast<int>(counts_.size());
  if (true_label < 0 || true_label >= n || predicted < 0 || predicted >= n)
    throw contract_error("EvalAccumulator: label outside class range");
  ++counts_[static_cast<std::size_t>(true_label)][static_cast<std::size_t>(predicted)];
  ++total_;
}

void EvalAccumulator::merge(const EvalAccumulator& other) {
  if (other.counts_.size() != counts_.size())
    throw contract_error("EvalAccumulator: class count mismatch in merge");
  for (std::size_t t = 0; t < counts_.size(); ++t)
    for (std::size_t p = 0; p < counts_.size(); ++p) counts_[t][p] += other.counts_[t][p];
  total_ += other.total_;
}

EvalReport EvalAccumulator::report() const {
  EvalReport rep;
  rep.n_test = total_;
  rep.confusion = counts_;
  rep.per_class_accuracy.assign(counts_.size(), 0.0);
  std::size_t correct = 0;
  for (std::size_t t = 0; t < counts_.size(); ++t) {
    std::size_t row = 0;
    for (std::size_t p = 0; p < counts_.size(); ++p) row += counts_[t][p];
    correct += counts_[t][t];
    rep.per_class_accuracy[t] =
        row == 0 ? 0.0 : static_cast<double>(counts_[t][t]) / static_cast<double>(row);
  }
  rep.overall_accuracy = total_ == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total_);
  return rep;
}

int predict_sample(const MlpParams& params, const Sample& sample) {
  return predict(params, featurize(sample, params.feature_kind));
}

int classical_estimate(IcVariant variant, const Sample& sample, int max_order) {
  const EigenSpectrum spectrum = eigen_spectrum(sample_covariance(sample.snapshots));
  const IcResult result = information_criterion(spectrum, sample.snapshots.cols(), variant);
  return std::min(result.estimate, max_order);
}

namespace {

template <typename PredictFn>
EvalReport evaluate_with(std::span<const Sample> testset, int num_classes, PredictFn&& fn) {
  if (testset.empty()) throw config_error("evaluate: test set must be non-empty");
  EvalAccumulator acc(num_classes);
#ifdef _OPENMP
#pragma omp parallel
  {
    EvalAccumulator local(num_classes);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(testset.size()); ++i) {
      const Sample& s = testset[static_cast<std::size_t>(i)];
      local.add(s.label, fn(s));
    }
#pragma omp critical(mos_eval_merge)
    acc.merge(local);
  }
#else
  for (const Sample& s : testset) acc.add(s.label, fn(s));
#endif
  return acc.report();
}

}  // namespace

EvalReport evaluate(const MlpParams& params, std::span<const Sample> testset) {
  params.validate();
  const int num_classes = params.output_dim();
  return evaluate_with(testset, num_classes, [&](const Sample& s) {
    thread_local ForwardCache cache;
    thread_local std::vector<double> buffer;
    buffer.resize(feature_length(params.feature_kind, s.snapshots.rows(), s.snapshots.cols()));
    if (buffer.size() != static_cast<std::size_t>(params.input_dim()))
      throw contract_error("evaluate: sample shape does not match network input");
    featurize_into(s.snapshots, params.feature_kind, buffer);
    return predict_with_cache(params, buffer, cache);
  });
}

EvalReport evaluate_classical(IcVariant variant, std::span<const Sample> testset, int max_order) {
  if (max_order < 0) throw config_error("evaluate_classical: max_order must be >= 0");
  return evaluate_with(testset, max_order + 1,
                       [&](const Sample& s) { return classical_estimate(variant, s, max_order); });
}

void write_eval_report_csv(const std::filesystem::path& path, const EvalReport& report,
                           std::span<const std::string> comments) {
  std::ofstream out(path);
  if (!out) throw io_error("write_eval_report_csv: cannot open " + path.string());
  for (const std::string& line : comments) out << "# " << line << "\n";

  const std::size_t n = report.confusion.size();
  out << "true_label";
  for (std::size_t p = 0; p < n; ++p) out << ",pred_" << p;
  out << "\n";
  for (std::size_t t = 0; t < n; ++t) {
    out << t;
    for (std::size_t p = 0; p < n; ++p) out << "," << report.confusion[t][p];
    out << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", report.overall_accuracy);
  out << "overall_accuracy," << buf << "\n";
  for (std::size_t t = 0; t < n; ++t) {
    std::snprintf(buf, sizeof buf, "%.6f", report.per_class_accuracy[t]);
    out << "class_" << t << "_accuracy," << buf << "\n";
  }
  out << "n_test," << report.n_test << "\n";
  if (!out) throw io_error("write_eval_report_csv: write failed for " + path.string());
}

}  // namespace mos

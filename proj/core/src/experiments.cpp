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

#include "mos/experiments.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mos/checkpoint.hpp"
#include "mos/errors.hpp"
#include "mos/steering.hpp"

namespace mos {

namespace {

constexpr std::size_t kEvalChunk = 4096;

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_accuracy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Per-test-set seed namespaces (stream index = tag + local offset).
enum TestSetTag : std::uint64_t {
  kTableTest = 1'000,
  kSnrTest = 2'000,       // + grid point
  kSnapshotTest = 3'000,  // + snapshot count
  kOnlineTest = 4'000,
  kMeasured = 5'000,  // + batch count
};

std::uint64_t test_seed(const ExperimentSpec& spec, std::uint64_t tag) {
  return Rng::stream(spec.seed, StreamPurpose::TestSet, tag).next();
}

// Streams the balanced test set in fixed chunks so large profiles never
// materialize whole datasets; every predictor sees identical samples.
template <typename Fn>
void for_each_test_chunk(const ScenarioConfig& scenario, std::size_t count, std::uint64_t seed,
                         Fn&& fn) {
  Rng shuffle_rng = Rng::stream(seed, StreamPurpose::DatasetShuffle, 0);
  const std::vector<int> labels = balanced_labels(scenario.num_classes(), count, shuffle_rng);
  std::vector<Sample> chunk;
  for (std::size_t begin = 0; begin < count; begin += kEvalChunk) {
    const std::size_t end = std::min(count, begin + kEvalChunk);
    chunk.resize(end - begin);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunk.size()); ++i) {
      const std::size_t idx = begin + static_cast<std::size_t>(i);
      chunk[static_cast<std::size_t>(i)] = dataset_sample(scenario, labels[idx], seed, idx);
    }
    fn(std::span<const Sample>(chunk));
  }
}

struct MethodSet {
  const MlpParams* covnet = nullptr;
  const MlpParams* compnet = nullptr;  // also used as the cross-N slot
  bool classical = true;
};

struct PairedReports {
  EvalReport covnet, compnet, aic, mdl;
};

// Evaluates the selected methods on one shared test set.
PairedReports evaluate_paired(const ScenarioConfig& scenario, std::size_t count,
                              std::uint64_t seed, const MethodSet& methods) {
  const int classes = scenario.num_classes();
  EvalAccumulator cov_acc(classes), comp_acc(classes), aic_acc(classes), mdl_acc(classes);
  for_each_test_chunk(scenario, count, seed, [&](std::span<const Sample> chunk) {
#pragma omp parallel
    {
      EvalAccumulator cov_local(classes), comp_local(classes), aic_local(classes),
          mdl_local(classes);
      thread_local ForwardCache cache;
      std::vector<double> buffer;
#pragma omp for schedule(static) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunk.size()); ++i) {
        const Sample& s = chunk[static_cast<std::size_t>(i)];
        if (methods.covnet) {
          buffer.resize(static_cast<std::size_t>(methods.covnet->input_dim()));
          featurize_into(s.snapshots, methods.covnet->feature_kind, buffer);
          cov_local.add(s.label, predict_with_cache(*methods.covnet, buffer, cache));
        }
        if (methods.compnet) {
          buffer.resize(static_cast<std::size_t>(methods.compnet->input_dim()));
          featurize_into(s.snapshots, methods.compnet->feature_kind, buffer);
          comp_local.add(s.label, predict_with_cache(*methods.compnet, buffer, cache));
        }
        if (methods.classical) {
          const EigenSpectrum spectrum = eigen_spectrum(sample_covariance(s.snapshots));
          const int n = s.snapshots.cols();
          aic_local.add(s.label,
                        std::min(information_criterion(spectrum, n, IcVariant::Aic).estimate,
                                 scenario.max_order));
          mdl_local.add(s.label,
                        std::min(information_criterion(spectrum, n, IcVariant::Mdl).estimate,
                                 scenario.max_order));
        }
      }
#pragma omp critical(mos_paired_merge)
      {
        cov_acc.merge(cov_local);
        comp_acc.merge(comp_local);
        aic_acc.merge(aic_local);
        mdl_acc.merge(mdl_local);
      }
    }
  });
  return {cov_acc.report(), comp_acc.report(), aic_acc.report(), mdl_acc.report()};
}

std::vector<std::string> csv_header(const ExperimentSpec& spec, std::string_view experiment) {
  std::ostringstream line;
  line << "mos " << experiment << " profile=" << to_string(spec.profile) << " seed=" << spec.seed
       << " config=" << hex64(fnv1a64(spec.config_string()));
  return {line.str()};
}

std::ofstream open_csv(const std::filesystem::path& path,
                       std::span<const std::string> comments) {
  std::ofstream out(path);
  if (!out) throw io_error("experiment: cannot open " + path.string());
  for (const std::string& c : comments) out << "# " << c << "\n";
  return out;
}

}  // namespace

Profile profile_from_string(std::string_view name) {
  if (name == "desk") return Profile::Desk;
  if (name == "paper") return Profile::Paper;
  throw config_error("unknown profile '" + std::string(name) + "' (expected desk or paper)");
}

std::string_view to_string(Profile profile) noexcept {
  return profile == Profile::Desk ? "desk" : "paper";
}

ExperimentProfile resolve_profile(Profile profile) {
  ExperimentProfile p;
  p.snapshot_grid = {2, 5, 10, 20, 50};
  p.online_batch_counts = {0, 1, 10, 100, 1000};
  if (profile == Profile::Desk) {
    p.hidden_width = 256;
    p.train_steps = 3000;
    p.table_test_size = 40000;
    p.snr_grid_db = {0, 5, 10, 15, 20, 25, 30};
    p.snr_test_size = 10000;
    p.snapshot_test_size = 10000;
    p.online_test_size = 10000;
  } else {
    p.hidden_width = 1024;
    p.train_steps = 15625;
    p.table_test_size = 1000000;
    for (double db = 0.0; db <= 30.0; db += 2.5) p.snr_grid_db.push_back(db);
    p.snr_test_size = 100000;
    p.snapshot_test_size = 100000;
    p.online_test_size = 100000;
  }
  return p;
}

ExperimentProfile ExperimentSpec::resolved() const {
  ExperimentProfile p = resolve_profile(profile);
  if (steps_override > 0) p.train_steps = steps_override;
  if (width_override > 0) p.hidden_width = width_override;
  if (test_size_override > 0) {
    p.table_test_size = test_size_override;
    p.snr_test_size = test_size_override;
    p.snapshot_test_size = test_size_override;
    p.online_test_size = test_size_override;
  }
  return p;
}

ScenarioConfig ExperimentSpec::base_scenario() const {
  ScenarioConfig scenario;
  scenario.num_antennas = 9;
  scenario.radius_over_lambda = 1.0;
  scenario.num_snapshots = num_snapshots;
  scenario.max_order = 3;
  scenario.snr = SnrLaw::uniform_db(1.0, 1000.0);
  return scenario;
}

std::string ExperimentSpec::config_string() const {
  const ExperimentProfile p = resolved();
  std::ostringstream s;
  s << "profile=" << to_string(profile) << ";seed=" << seed << ";width=" << p.hidden_width
    << ";steps=" << p.train_steps << ";batch=" << p.batch_size << ";lr=" << p.learning_rate
    << ";table_test=" << p.table_test_size << ";snr_test=" << p.snr_test_size
    << ";snapshot_test=" << p.snapshot_test_size << ";online_test=" << p.online_test_size
    << ";online_epochs=" << p.online_epochs << ";online_cap=" << p.online_update_cap
    << ";off_diag=" << p.calibration_off_diag << ";snapshots=" << num_snapshots;
  return s.str();
}

MlpParams train_or_load_network(const ExperimentSpec& spec, const ScenarioConfig& scenario,
                                FeatureKind kind, const std::string& tag) {
  const ExperimentProfile profile = spec.resolved();

  TrainConfig cfg;
  cfg.steps = profile.train_steps;
  cfg.batch_size = profile.batch_size;
  cfg.learning_rate = profile.learning_rate;
  cfg.feature_kind = kind;
  cfg.scenario = scenario;
  cfg.hidden_dims = {profile.hidden_width, profile.hidden_width, profile.hidden_width};
  cfg.eval_every = 0;  // experiment runs keep their own evaluation sets
  cfg.seed = Rng::stream(spec.seed, StreamPurpose::NetworkInit, fnv1a64(tag)).next();

  const std::string key = hex64(
      fnv1a64(spec.config_string() + ";net=" + tag + ";kind=" + std::string(to_string(kind)) +
              ";N=" + std::to_string(scenario.num_snapshots) +
              ";cal=" + (scenario.calibration ? "1" : "0")));
  const std::filesystem::path path = spec.out_dir / (tag + "_" + key + ".ckpt");

  if (std::filesystem::exists(path)) {
    try {
      Checkpoint ckpt = load_checkpoint(path);
      if (ckpt.params.feature_kind == kind && ckpt.params.layer_dims == cfg.layer_dims() &&
          ckpt.params.meta.steps == cfg.steps)
        return std::move(ckpt.params);
    } catch (const io_error&) {
      // stale or corrupt cache entry, retrain over it
    }
  }

  TrainResult result = train_offline(cfg);
  if (result.diverged)
    throw numeric_error("train_or_load_network(" + tag + "): " + result.diagnostic);
  std::filesystem::create_directories(spec.out_dir);
  save_checkpoint(result.params, nullptr, path);
  return std::move(result.params);
}

TableArtifacts compute_table_artifacts(const ExperimentSpec& spec) {
  const ExperimentProfile profile = spec.resolved();
  const ScenarioConfig scenario = spec.base_scenario();
  const MlpParams covnet =
      train_or_load_network(spec, scenario, FeatureKind::Covariance, "covnet_n10");
  const MlpParams compnet =
      train_or_load_network(spec, scenario, FeatureKind::StackedIq, "compnet_n10");

  MethodSet methods;
  methods.covnet = &covnet;
  methods.compnet = &compnet;
  const PairedReports reports =
      evaluate_paired(scenario, profile.table_test_size, test_seed(spec, kTableTest), methods);
  return {reports.covnet, reports.compnet, reports.aic, reports.mdl};
}

TableResult run_accuracy_table(const ExperimentSpec& spec) {
  const TableArtifacts a = compute_table_artifacts(spec);

  std::filesystem::create_directories(spec.out_dir);
  TableResult result{a, spec.out_dir / "accuracy_table.csv"};
  std::ofstream out = open_csv(result.csv_path, csv_header(spec, "accuracy-table"));
  out << "row,covnet,compnet,aic,mdl\n";
  out << "overall," << format_accuracy(a.covnet.overall_accuracy) << ","
      << format_accuracy(a.compnet.overall_accuracy) << ","
      << format_accuracy(a.aic.overall_accuracy) << ","
      << format_accuracy(a.mdl.overall_accuracy) << "\n";
  for (std::size_t c = 0; c < a.covnet.per_class_accuracy.size(); ++c) {
    out << "class_" << c << "," << format_accuracy(a.covnet.per_class_accuracy[c]) << ","
        << format_accuracy(a.compnet.per_class_accuracy[c]) << ","
        << format_accuracy(a.aic.per_class_accuracy[c]) << ","
        << format_accuracy(a.mdl.per_class_accuracy[c]) << "\n";
  }
  if (!out) throw io_error("run_accuracy_table: write failed");
  return result;
}

namespace {

void write_confusion_csv(const std::filesystem::path& path, const EvalReport& report,
                         std::span<const std::string> comments) {
  // Normalized per true class; columns are true labels (each sums to 1),
  // rows the predicted order.
  const std::size_t n = report.confusion.size();
  std::ofstream out = open_csv(path, comments);
  out << "pred";
  for (std::size_t t = 0; t < n; ++t) out << ",true_" << t;
  out << "\n";
  std::vector<std::size_t> col_total(n, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t p = 0; p < n; ++p) col_total[t] += report.confusion[t][p];
  for (std::size_t p = 0; p < n; ++p) {
    out << p;
    for (std::size_t t = 0; t < n; ++t) {
      const double v =
          col_total[t] == 0 ? 0.0 : static_cast<double>(report.confusion[t][p]) / col_total[t];
      out << "," << format_accuracy(v);
    }
    out << "\n";
  }
  if (!out) throw io_error("run_confusion: write failed for " + path.string());
}

}  // namespace

ConfusionResult run_confusion(const ExperimentSpec& spec) {
  const TableArtifacts a = compute_table_artifacts(spec);
  std::filesystem::create_directories(spec.out_dir);
  ConfusionResult result;
  result.covnet = a.covnet;
  result.mdl = a.mdl;
  result.covnet_csv = spec.out_dir / "confusion_covnet.csv";
  result.mdl_csv = spec.out_dir / "confusion_mdl.csv";
  write_confusion_csv(result.covnet_csv, a.covnet, csv_header(spec, "confusion-covnet"));
  write_confusion_csv(result.mdl_csv, a.mdl, csv_header(spec, "confusion-mdl"));
  return result;
}

SnrSweepResult run_snr_sweep(const ExperimentSpec& spec) {
  const ExperimentProfile profile = spec.resolved();
  const ScenarioConfig scenario = spec.base_scenario();
  const MlpParams covnet =
      train_or_load_network(spec, scenario, FeatureKind::Covariance, "covnet_n10");

  SnrSweepResult result;
  result.snr_db = profile.snr_grid_db;
  MethodSet methods;
  methods.covnet = &covnet;
  for (std::size_t i = 0; i < profile.snr_grid_db.size(); ++i) {
    ScenarioConfig point = scenario;
    point.snr = SnrLaw::fixed_db(profile.snr_grid_db[i]);
    const PairedReports reports =
        evaluate_paired(point, profile.snr_test_size, test_seed(spec, kSnrTest + i), methods);
    result.covnet.push_back(reports.covnet.overall_accuracy);
    result.aic.push_back(reports.aic.overall_accuracy);
    result.mdl.push_back(reports.mdl.overall_accuracy);
  }

  std::filesystem::create_directories(spec.out_dir);
  result.csv_path = spec.out_dir / "snr_sweep.csv";
  std::ofstream out = open_csv(result.csv_path, csv_header(spec, "snr-sweep"));
  out << "snr_db,method,accuracy\n";
  for (std::size_t i = 0; i < result.snr_db.size(); ++i) {
    char db[32];
    std::snprintf(db, sizeof db, "%g", result.snr_db[i]);
    out << db << ",covnet," << format_accuracy(result.covnet[i]) << "\n";
    out << db << ",aic," << format_accuracy(result.aic[i]) << "\n";
    out << db << ",mdl," << format_accuracy(result.mdl[i]) << "\n";
  }
  if (!out) throw io_error("run_snr_sweep: write failed");
  return result;
}

SnapshotSweepResult run_snapshot_sweep(const ExperimentSpec& spec) {
  const ExperimentProfile profile = spec.resolved();

  ExperimentSpec n10_spec = spec;
  n10_spec.num_snapshots = 10;
  const MlpParams covnet_n10 = train_or_load_network(n10_spec, n10_spec.base_scenario(),
                                                     FeatureKind::Covariance, "covnet_n10");

  SnapshotSweepResult result;
  result.snapshots = profile.snapshot_grid;
  for (const int n : profile.snapshot_grid) {
    ExperimentSpec point_spec = spec;
    point_spec.num_snapshots = n;
    const ScenarioConfig scenario = point_spec.base_scenario();
    const MlpParams matched =
        n == 10 ? covnet_n10
                : train_or_load_network(point_spec, scenario, FeatureKind::Covariance,
                                        "covnet_n" + std::to_string(n));

    MethodSet methods;
    methods.covnet = &matched;
    methods.compnet = &covnet_n10;  // cross-N evaluation
    const PairedReports reports =
        evaluate_paired(scenario, profile.snapshot_test_size,
                        test_seed(spec, kSnapshotTest + static_cast<std::uint64_t>(n)), methods);
    result.matched.push_back(reports.covnet.overall_accuracy);
    result.cross_n10.push_back(reports.compnet.overall_accuracy);
    result.aic.push_back(reports.aic.overall_accuracy);
    result.mdl.push_back(reports.mdl.overall_accuracy);
  }

  std::filesystem::create_directories(spec.out_dir);
  result.csv_path = spec.out_dir / "snapshot_sweep.csv";
  std::ofstream out = open_csv(result.csv_path, csv_header(spec, "snapshot-sweep"));
  out << "num_snapshots,method,accuracy\n";
  for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
    out << result.snapshots[i] << ",covnet_matched," << format_accuracy(result.matched[i]) << "\n";
    out << result.snapshots[i] << ",covnet_n10," << format_accuracy(result.cross_n10[i]) << "\n";
    out << result.snapshots[i] << ",aic," << format_accuracy(result.aic[i]) << "\n";
    out << result.snapshots[i] << ",mdl," << format_accuracy(result.mdl[i]) << "\n";
  }
  if (!out) throw io_error("run_snapshot_sweep: write failed");
  return result;
}

OnlineCurveResult run_online_curve(const ExperimentSpec& spec) {
  const ExperimentProfile profile = spec.resolved();
  const ScenarioConfig ideal = spec.base_scenario();
  ScenarioConfig calibrated = ideal;
  calibrated.calibration =
      tridiagonal_calibration(ideal.num_antennas, profile.calibration_off_diag);

  const MlpParams pretrained =
      train_or_load_network(spec, ideal, FeatureKind::Covariance, "covnet_n10");
  const MlpParams full_cal =
      train_or_load_network(spec, calibrated, FeatureKind::Covariance, "covnet_cal_n10");

  // Randomly initialized curve, same architecture.
  Rng random_rng = Rng::stream(spec.seed, StreamPurpose::NetworkInit, fnv1a64("online_random"));
  MlpParams random_init =
      glorot_uniform_init(pretrained.layer_dims, FeatureKind::Covariance, random_rng);
  random_init.meta = {ideal.num_antennas, ideal.num_snapshots, ideal.max_order, 0};

  const std::vector<Sample> testset =
      draw_balanced_dataset(calibrated, profile.online_test_size, test_seed(spec, kOnlineTest));

  OnlineCurveResult result;
  result.batch_counts = profile.online_batch_counts;
  result.aic_ref =
      evaluate_classical(IcVariant::Aic, testset, calibrated.max_order).overall_accuracy;
  result.mdl_ref =
      evaluate_classical(IcVariant::Mdl, testset, calibrated.max_order).overall_accuracy;
  result.full_ref = evaluate(full_cal, testset).overall_accuracy;

  for (const std::uint64_t d : result.batch_counts) {
    if (d == 0) {
      result.pretrained.push_back(evaluate(pretrained, testset).overall_accuracy);
      result.random_init.push_back(evaluate(random_init, testset).overall_accuracy);
      continue;
    }
    const std::vector<Sample> measured =
        draw_balanced_dataset(calibrated, 64 * d, test_seed(spec, kMeasured + d));
    const std::uint64_t updates = std::min(profile.online_epochs * d, profile.online_update_cap);
    const std::uint64_t online_seed =
        Rng::stream(spec.seed, StreamPurpose::OnlineShuffle, d).next();
    const MlpParams tuned_pre =
        train_online(pretrained, measured, updates, profile.learning_rate, online_seed);
    const MlpParams tuned_rand =
        train_online(random_init, measured, updates, profile.learning_rate, online_seed);
    result.pretrained.push_back(evaluate(tuned_pre, testset).overall_accuracy);
    result.random_init.push_back(evaluate(tuned_rand, testset).overall_accuracy);
  }

  std::filesystem::create_directories(spec.out_dir);
  result.csv_path = spec.out_dir / "online_curve.csv";
  std::ofstream out = open_csv(result.csv_path, csv_header(spec, "online-curve"));
  out << "n_batches,init_kind,accuracy\n";
  for (std::size_t i = 0; i < result.batch_counts.size(); ++i) {
    out << result.batch_counts[i] << ",pretrained," << format_accuracy(result.pretrained[i])
        << "\n";
    out << result.batch_counts[i] << ",random," << format_accuracy(result.random_init[i]) << "\n";
  }
  out << "ref,aic," << format_accuracy(result.aic_ref) << "\n";
  out << "ref,mdl," << format_accuracy(result.mdl_ref) << "\n";
  out << "ref,covnet_full," << format_accuracy(result.full_ref) << "\n";
  if (!out) throw io_error("run_online_curve: write failed");
  return result;
}

}  // namespace mos

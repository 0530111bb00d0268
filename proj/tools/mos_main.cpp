// SPDX-License-Identifier: Apache-2.0
//
// mos command line tool: dataset generation, training, evaluation and the
// experiment runners, all seeded and reproducible.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "mos/checkpoint.hpp"
#include "mos/dataset_io.hpp"
#include "mos/experiments.hpp"
#include "mos/parallel.hpp"
#include "mos/steering.hpp"

namespace {

struct CommonOpts {
  std::string profile = "desk";
  std::uint64_t seed = 1;
  std::string out;
  int jobs = 0;
  std::uint64_t steps = 0;      // 0 = profile default
  int width = 0;                // 0 = profile default
  std::size_t test_size = 0;    // 0 = profile default
  int snapshots = 10;
};

struct ScenarioOpts {
  int antennas = 9;
  double radius_over_lambda = 1.0;
  int lmax = 3;
  double snr_lo = 1.0;
  double snr_hi = 1000.0;
  std::string snr_law = "db";  // db | linear | fixed
  bool calibrated = false;
  double off_diag = 0.25;
};

void add_scenario_flags(CLI::App* cmd, ScenarioOpts& s) {
  cmd->add_option("-M,--antennas", s.antennas, "Number of array antennas");
  cmd->add_option("--radius", s.radius_over_lambda, "Array radius over wavelength");
  cmd->add_option("--lmax", s.lmax, "Largest model order (classes are 0..Lmax)");
  cmd->add_option("--snr-lo", s.snr_lo, "Lower SNR bound (linear scale)");
  cmd->add_option("--snr-hi", s.snr_hi, "Upper SNR bound (linear scale)");
  cmd->add_option("--snr-law", s.snr_law, "SNR distribution: db, linear or fixed")
      ->check(CLI::IsMember({"db", "linear", "fixed"}));
  cmd->add_flag("--calibrated", s.calibrated, "Apply the tridiagonal calibration matrix");
  cmd->add_option("--off-diag", s.off_diag, "Calibration off-diagonal coupling value");
}

mos::ScenarioConfig make_scenario(const ScenarioOpts& s, int snapshots, std::uint64_t seed) {
  mos::ScenarioConfig cfg;
  cfg.num_antennas = s.antennas;
  cfg.radius_over_lambda = s.radius_over_lambda;
  cfg.num_snapshots = snapshots;
  cfg.max_order = s.lmax;
  if (s.snr_law == "linear")
    cfg.snr = mos::SnrLaw::uniform_linear(s.snr_lo, s.snr_hi);
  else if (s.snr_law == "fixed")
    cfg.snr = mos::SnrLaw::fixed(s.snr_lo);
  else
    cfg.snr = mos::SnrLaw::uniform_db(s.snr_lo, s.snr_hi);
  if (s.calibrated) cfg.calibration = mos::tridiagonal_calibration(s.antennas, s.off_diag);
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

mos::ExperimentSpec make_spec(const CommonOpts& opts) {
  mos::ExperimentSpec spec;
  spec.profile = mos::profile_from_string(opts.profile);
  spec.seed = opts.seed;
  spec.out_dir = opts.out.empty() ? "." : opts.out;
  spec.steps_override = opts.steps;
  spec.width_override = opts.width;
  spec.test_size_override = opts.test_size;
  spec.num_snapshots = opts.snapshots;
  return spec;
}

void print_report(const char* name, const mos::EvalReport& report) {
  std::printf("%-16s accuracy %.4f  per-class", name, report.overall_accuracy);
  for (double a : report.per_class_accuracy) std::printf(" %.4f", a);
  std::printf("  (n=%zu)\n", report.n_test);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model order selection for antenna array snapshots"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  CommonOpts opts;
  ScenarioOpts scenario_opts;
  app.add_option("--profile", opts.profile, "Experiment profile")
      ->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--seed", opts.seed, "Root seed; every derived stream is keyed off it");
  app.add_option("--out,-o", opts.out, "Output file or directory");
  app.add_option("--jobs,-j", opts.jobs, "Worker thread cap (0 = hardware)");
  app.add_option("--steps", opts.steps, "Override training step count");
  app.add_option("--width", opts.width, "Override hidden layer width");
  app.add_option("--test-size", opts.test_size, "Override test set sizes");
  app.add_option("--snapshots,-N", opts.snapshots, "Snapshots per sample");

  // generate
  auto* generate = app.add_subcommand("generate", "Write a MOSDATA v1 dataset dump");
  std::size_t gen_count = 4096;
  generate->add_option("--count", gen_count, "Number of samples");
  add_scenario_flags(generate, scenario_opts);

  // train
  auto* train = app.add_subcommand("train", "Train a classifier offline (continuous sampling)");
  std::string train_feature = "cov";
  std::string train_log;
  train->add_option("--feature", train_feature, "Network input encoding")
      ->check(CLI::IsMember({"iq", "cov"}));
  train->add_option("--log", train_log, "Training log CSV path");
  add_scenario_flags(train, scenario_opts);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint or a classical criterion");
  std::string eval_checkpoint, eval_dataset, eval_method = "net";
  eval->add_option("--checkpoint", eval_checkpoint, "Checkpoint to evaluate (method net)");
  eval->add_option("--dataset", eval_dataset, "Evaluate on a MOSDATA dump instead of fresh draws");
  eval->add_option("--method", eval_method, "net, aic or mdl")
      ->check(CLI::IsMember({"net", "aic", "mdl"}));
  std::size_t eval_count = 10000;
  eval->add_option("--count", eval_count, "Fresh test set size");
  add_scenario_flags(eval, scenario_opts);

  // experiments
  auto* table = app.add_subcommand("table", "Accuracy table plus confusion matrices");
  auto* sweep_snr = app.add_subcommand("sweep-snr", "Accuracy over a fixed-SNR grid");
  auto* sweep_snapshots =
      app.add_subcommand("sweep-snapshots", "Accuracy over the snapshot-count grid");
  auto* online = app.add_subcommand("online", "Calibrated-array online adaptation curve");

  CLI11_PARSE(app, argc, argv);

  try {
    mos::set_max_threads(opts.jobs);

    if (generate->parsed()) {
      const mos::ScenarioConfig cfg = make_scenario(scenario_opts, opts.snapshots, opts.seed);
      const std::string path = opts.out.empty() ? "dataset.mosdata" : opts.out;
      const std::vector<mos::Sample> samples =
          mos::draw_balanced_dataset(cfg, gen_count, opts.seed);
      mos::write_dataset(path,
                         {cfg.num_antennas, cfg.num_snapshots, cfg.max_order, samples.size()},
                         samples);
      std::printf("wrote %zu samples (M=%d N=%d Lmax=%d) to %s\n", samples.size(),
                  cfg.num_antennas, cfg.num_snapshots, cfg.max_order, path.c_str());
    } else if (train->parsed()) {
      mos::TrainConfig cfg;
      cfg.scenario = make_scenario(scenario_opts, opts.snapshots, opts.seed);
      cfg.feature_kind = mos::feature_kind_from_string(train_feature);
      const mos::ExperimentProfile profile = make_spec(opts).resolved();
      cfg.steps = profile.train_steps;
      cfg.batch_size = profile.batch_size;
      cfg.learning_rate = profile.learning_rate;
      cfg.hidden_dims = {profile.hidden_width, profile.hidden_width, profile.hidden_width};
      cfg.eval_every = profile.eval_every;
      cfg.eval_size = profile.eval_size;
      cfg.seed = opts.seed;

      const mos::TrainResult result = mos::train_offline(cfg);
      const std::string path = opts.out.empty() ? "network.ckpt" : opts.out;
      mos::save_checkpoint(result.params, nullptr, path);
      if (!train_log.empty()) {
        const std::vector<std::string> comments = {"mos train seed=" + std::to_string(opts.seed)};
        mos::write_training_log_csv(train_log, result.log, comments);
      }
      if (result.diverged) {
        std::fprintf(stderr, "mos: training diverged: %s (last finite checkpoint saved to %s)\n",
                     result.diagnostic.c_str(), path.c_str());
        return 2;
      }
      std::printf("trained %llu steps, checkpoint %s\n",
                  static_cast<unsigned long long>(result.steps_completed), path.c_str());
      if (!result.log.empty())
        std::printf("final eval accuracy %.4f\n", result.log.back().eval_accuracy);
    } else if (eval->parsed()) {
      std::vector<mos::Sample> testset;
      int max_order = scenario_opts.lmax;
      if (!eval_dataset.empty()) {
        mos::DatasetHeader header;
        testset = mos::read_dataset(eval_dataset, &header);
        max_order = header.max_order;
      } else {
        const mos::ScenarioConfig cfg = make_scenario(scenario_opts, opts.snapshots, opts.seed);
        testset = mos::draw_balanced_dataset(cfg, eval_count, opts.seed);
      }

      mos::EvalReport report;
      if (eval_method == "net") {
        if (eval_checkpoint.empty())
          throw mos::config_error("eval --method net requires --checkpoint");
        const mos::Checkpoint ckpt = mos::load_checkpoint(eval_checkpoint);
        report = mos::evaluate(ckpt.params, testset);
      } else {
        const mos::IcVariant variant =
            eval_method == "aic" ? mos::IcVariant::Aic : mos::IcVariant::Mdl;
        report = mos::evaluate_classical(variant, testset, max_order);
      }
      print_report(eval_method.c_str(), report);
      if (!opts.out.empty()) {
        const std::vector<std::string> comments = {"mos eval method=" + eval_method +
                                                   " seed=" + std::to_string(opts.seed)};
        mos::write_eval_report_csv(opts.out, report, comments);
      }
    } else if (table->parsed()) {
      const mos::ExperimentSpec spec = make_spec(opts);
      const mos::TableResult result = mos::run_accuracy_table(spec);
      const mos::ConfusionResult confusion = mos::run_confusion(spec);
      print_report("covnet", result.reports.covnet);
      print_report("compnet", result.reports.compnet);
      print_report("aic", result.reports.aic);
      print_report("mdl", result.reports.mdl);
      std::printf("wrote %s, %s, %s\n", result.csv_path.string().c_str(),
                  confusion.covnet_csv.string().c_str(), confusion.mdl_csv.string().c_str());
    } else if (sweep_snr->parsed()) {
      const mos::SnrSweepResult result = mos::run_snr_sweep(make_spec(opts));
      for (std::size_t i = 0; i < result.snr_db.size(); ++i)
        std::printf("%5.1f dB  covnet %.4f  aic %.4f  mdl %.4f\n", result.snr_db[i],
                    result.covnet[i], result.aic[i], result.mdl[i]);
      std::printf("wrote %s\n", result.csv_path.string().c_str());
    } else if (sweep_snapshots->parsed()) {
      const mos::SnapshotSweepResult result = mos::run_snapshot_sweep(make_spec(opts));
      for (std::size_t i = 0; i < result.snapshots.size(); ++i)
        std::printf("N=%3d  matched %.4f  covnet_n10 %.4f  aic %.4f  mdl %.4f\n",
                    result.snapshots[i], result.matched[i], result.cross_n10[i], result.aic[i],
                    result.mdl[i]);
      std::printf("wrote %s\n", result.csv_path.string().c_str());
    } else if (online->parsed()) {
      const mos::OnlineCurveResult result = mos::run_online_curve(make_spec(opts));
      for (std::size_t i = 0; i < result.batch_counts.size(); ++i)
        std::printf("batches=%4llu  pretrained %.4f  random %.4f\n",
                    static_cast<unsigned long long>(result.batch_counts[i]), result.pretrained[i],
                    result.random_init[i]);
      std::printf("refs: aic %.4f  mdl %.4f  covnet_full %.4f\n", result.aic_ref, result.mdl_ref,
                  result.full_ref);
      std::printf("wrote %s\n", result.csv_path.string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mos: error: %s\n", e.what());
    return 1;
  }
  return 0;
}

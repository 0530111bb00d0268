// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mos/evaluate.hpp"
#include "mos/trainer.hpp"

using namespace mos;

namespace {

TrainConfig tiny_config(std::uint64_t seed) {
  TrainConfig cfg;
  cfg.scenario.num_snapshots = 4;
  cfg.steps = 5;
  cfg.hidden_dims = {16, 16, 16};
  cfg.eval_every = 0;
  cfg.seed = seed;
  return cfg;
}

bool same_params(const MlpParams& a, const MlpParams& b) {
  return a.layer_dims == b.layer_dims && a.weights == b.weights && a.biases == b.biases;
}

}  // namespace

TEST_CASE("config validation rejects bad step and batch counts") {
  TrainConfig cfg = tiny_config(1);
  cfg.steps = 0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = tiny_config(1);
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = tiny_config(1);
  cfg.hidden_dims.clear();
  CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("training batches are balanced, step-keyed and non-repeating") {
  TrainConfig cfg = tiny_config(99);

  const std::vector<Sample> b0 = draw_training_batch(cfg, 0);
  const std::vector<Sample> b0_again = draw_training_batch(cfg, 0);
  const std::vector<Sample> b1 = draw_training_batch(cfg, 1);
  REQUIRE(b0.size() == 64);

  std::vector<int> hist(4, 0);
  for (const Sample& s : b0) ++hist[static_cast<std::size_t>(s.label)];
  for (int h : hist) CHECK(h == 16);

  bool identical = true;
  for (std::size_t i = 0; i < b0.size(); ++i)
    identical = identical && b0[i].snapshots == b0_again[i].snapshots;
  CHECK(identical);

  // Continuous sampling: a later step never reuses realizations.
  bool any_equal = false;
  for (const Sample& x : b0)
    for (const Sample& y : b1) any_equal = any_equal || x.snapshots == y.snapshots;
  CHECK_FALSE(any_equal);
}

TEST_CASE("steps = 1 performs exactly one update") {
  TrainConfig cfg = tiny_config(7);
  cfg.steps = 1;
  const TrainResult result = train_offline(cfg);
  CHECK(result.steps_completed == 1);
  CHECK(result.params.meta.steps == 1);
  CHECK_FALSE(result.diverged);

  Rng init_rng = Rng::stream(cfg.seed, StreamPurpose::NetworkInit, 0);
  const MlpParams init = glorot_uniform_init(cfg.layer_dims(), cfg.feature_kind, init_rng);
  CHECK_FALSE(same_params(result.params, init));
}

TEST_CASE("identical seeds give bitwise-identical training runs") {
  const TrainConfig cfg = tiny_config(123);
  const TrainResult a = train_offline(cfg);
  const TrainResult b = train_offline(cfg);
  CHECK(same_params(a.params, b.params));

  TrainConfig other = cfg;
  other.seed = 124;
  const TrainResult c = train_offline(other);
  CHECK_FALSE(same_params(a.params, c.params));
}

TEST_CASE("training log records the requested cadence") {
  TrainConfig cfg = tiny_config(5);
  cfg.steps = 10;
  cfg.eval_every = 4;
  cfg.eval_size = 64;
  const TrainResult result = train_offline(cfg);
  REQUIRE(result.log.size() == 3);  // steps 4, 8 and the final step 10
  CHECK(result.log[0].step == 4);
  CHECK(result.log[1].step == 8);
  CHECK(result.log[2].step == 10);
  for (const TrainLogEntry& e : result.log) {
    CHECK(std::isfinite(e.loss));
    CHECK(e.eval_accuracy >= 0.0);
    CHECK(e.eval_accuracy <= 1.0);
  }

  const auto path = std::filesystem::temp_directory_path() / "mos_train_log.csv";
  const std::vector<std::string> comments{"unit test"};
  write_training_log_csv(path, result.log, comments);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# unit test");
  std::getline(in, line);
  CHECK(line == "step,loss,eval_accuracy");
  std::filesystem::remove(path);
}

TEST_CASE("online fine-tuning with zero batches returns the init bit for bit") {
  const TrainResult pre = train_offline(tiny_config(11));
  const auto measured = draw_balanced_dataset(tiny_config(11).scenario, 32, 400);
  const MlpParams out = train_online(pre.params, measured, 0, 1e-3, 55);
  CHECK(same_params(out, pre.params));
}

TEST_CASE("online fine-tuning updates parameters and cycles a small set") {
  const TrainResult pre = train_offline(tiny_config(12));
  // 10 samples < batch size 64 forces sampling with replacement.
  const auto measured = draw_balanced_dataset(tiny_config(12).scenario, 10, 401);
  const MlpParams out = train_online(pre.params, measured, 3, 1e-3, 56);
  CHECK_FALSE(same_params(out, pre.params));
  CHECK(out.meta.steps == pre.params.meta.steps + 3);

  const MlpParams again = train_online(pre.params, measured, 3, 1e-3, 56);
  CHECK(same_params(out, again));
}

TEST_CASE("online fine-tuning validates inputs") {
  const TrainResult pre = train_offline(tiny_config(13));
  const std::vector<Sample> empty;
  CHECK_THROWS_AS((void)train_online(pre.params, empty, 1, 1e-3, 1), config_error);

  ScenarioConfig other = tiny_config(13).scenario;
  other.num_antennas = 8;
  other.max_order = 3;
  const auto wrong_geometry = draw_balanced_dataset(other, 8, 402);
  CHECK_THROWS_AS((void)train_online(pre.params, wrong_geometry, 1, 1e-3, 1), contract_error);
}

TEST_CASE("evaluation accumulator: oracle predictor, chance level, report invariants") {
  SUBCASE("oracle predictor is perfect with a diagonal confusion") {
    EvalAccumulator acc(4);
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      const int label = static_cast<int>(rng.below(4));
      acc.add(label, label);
    }
    const EvalReport rep = acc.report();
    CHECK(rep.overall_accuracy == 1.0);
    for (int c = 0; c < 4; ++c)
      for (int p = 0; p < 4; ++p)
        if (c != p) CHECK(rep.confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)] == 0);
  }

  SUBCASE("uniform random predictor sits at chance level") {
    EvalAccumulator acc(4);
    Rng rng(2);
    for (int i = 0; i < 10000; ++i)
      acc.add(static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)));
    const EvalReport rep = acc.report();
    CHECK(rep.overall_accuracy == doctest::Approx(0.25).epsilon(0.08));
  }

  SUBCASE("row sums and trace identities hold") {
    EvalAccumulator acc(3);
    Rng rng(3);
    std::vector<std::size_t> row_counts(3, 0);
    std::size_t correct = 0;
    for (int i = 0; i < 500; ++i) {
      const int t = static_cast<int>(rng.below(3));
      const int p = static_cast<int>(rng.below(3));
      acc.add(t, p);
      ++row_counts[static_cast<std::size_t>(t)];
      if (t == p) ++correct;
    }
    const EvalReport rep = acc.report();
    for (int t = 0; t < 3; ++t) {
      std::size_t sum = 0;
      for (int p = 0; p < 3; ++p) sum += rep.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
      CHECK(sum == row_counts[static_cast<std::size_t>(t)]);
    }
    CHECK(rep.overall_accuracy ==
          doctest::Approx(static_cast<double>(correct) / 500.0).epsilon(1e-12));
  }
}

TEST_CASE("evaluate is deterministic and order-invariant") {
  const TrainConfig cfg = tiny_config(21);
  const TrainResult trained = train_offline(cfg);
  auto testset = draw_balanced_dataset(cfg.scenario, 100, 500);

  const EvalReport a = evaluate(trained.params, testset);
  std::reverse(testset.begin(), testset.end());
  const EvalReport b = evaluate(trained.params, testset);
  CHECK(a.overall_accuracy == b.overall_accuracy);
  CHECK(a.confusion == b.confusion);

  const std::vector<Sample> empty;
  CHECK_THROWS_AS((void)evaluate(trained.params, empty), config_error);
}

TEST_CASE("overfit and underfit masses read the confusion triangles") {
  EvalAccumulator acc(3);
  acc.add(0, 1);
  acc.add(0, 2);
  acc.add(1, 2);
  acc.add(2, 0);
  acc.add(1, 1);
  const EvalReport rep = acc.report();
  CHECK(rep.overfit_mass() == 3);
  CHECK(rep.underfit_mass() == 1);
}

TEST_CASE("eval report CSV layout") {
  EvalAccumulator acc(2);
  acc.add(0, 0);
  acc.add(1, 0);
  acc.add(1, 1);
  const auto path = std::filesystem::temp_directory_path() / "mos_eval_report.csv";
  const std::vector<std::string> comments{"hdr"};
  write_eval_report_csv(path, acc.report(), comments);

  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  const std::string text = body.str();
  CHECK(text.find("# hdr\n") == 0);
  CHECK(text.find("true_label,pred_0,pred_1\n") != std::string::npos);
  CHECK(text.find("0,1,0\n") != std::string::npos);
  CHECK(text.find("1,1,1\n") != std::string::npos);
  CHECK(text.find("overall_accuracy,0.666667\n") != std::string::npos);
  CHECK(text.find("n_test,3\n") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("divergence is reported with the last finite parameters") {
  TrainConfig cfg = tiny_config(31);
  cfg.steps = 50;
  cfg.learning_rate = 1e60;  // guaranteed blow-up
  const TrainResult result = train_offline(cfg);
  CHECK(result.diverged);
  CHECK_FALSE(result.diagnostic.empty());
  CHECK(result.steps_completed < cfg.steps);
  result.params.validate();  // finite parameters only
}

// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: nine numbered checks covering the gradient and
// eigen/criteria oracles, the classical high-SNR regime, and the five
// desk-scale study reproductions. Prints one PASS/FAIL line per criterion;
// the exit code is the number of failures.
//
// Usage: acceptance [--criterion K]... [--workdir DIR] [--seed S] [--jobs N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mos/checkpoint.hpp"
#include "mos/dataset_io.hpp"
#include "mos/experiments.hpp"
#include "mos/parallel.hpp"

using namespace mos;

namespace {

struct Context {
  std::filesystem::path workdir = "acceptance_work";
  std::uint64_t seed = 42;
  std::optional<TableArtifacts> table;   // shared between criteria 4 and 5
  std::uint64_t table_seed = 0;          // seed the table finally ran with
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

ExperimentSpec desk_spec(const Context& ctx, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.profile = Profile::Desk;
  spec.seed = seed;
  spec.out_dir = ctx.workdir;
  return spec;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Criterion 1: analytic gradients vs central finite differences on at least
// 100 random small networks, max relative error <= 1e-4.
// ---------------------------------------------------------------------------

double loss_at(const MlpParams& p, const FeatureVector& x, int label) {
  ForwardCache cache;
  (void)forward(p, x, &cache);
  return cross_entropy_from_logits(cache.logits, label);
}

Outcome criterion1(Context&) {
  Rng rng(0xC1);
  const double step = 1e-5;
  double worst = 0.0;
  int networks = 0;
  int attempts = 0;

  while (networks < 100 && attempts < 400) {
    ++attempts;
    std::vector<int> dims{2 + static_cast<int>(rng.below(5))};
    for (int l = 0; l < 3; ++l) dims.push_back(3 + static_cast<int>(rng.below(4)));
    dims.push_back(2 + static_cast<int>(rng.below(4)));

    MlpParams p = glorot_uniform_init(dims, FeatureKind::Covariance, rng);
    FeatureVector x;
    x.kind = FeatureKind::Covariance;
    x.values.resize(static_cast<std::size_t>(p.input_dim()));
    for (double& v : x.values) v = rng.normal_pair().first;

    ForwardCache cache;
    (void)forward(p, x, &cache);
    // Keep the finite-difference stencil away from ReLU kinks.
    bool near_kink = false;
    for (std::size_t l = 1; l + 1 < p.layer_dims.size() && !near_kink; ++l)
      for (double a : cache.activations[l])
        if (a > 0.0 && a < 1e-3) near_kink = true;
    if (near_kink) continue;

    const int label = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.output_dim())));
    const Gradients grads = backward(p, cache, label);

    for (std::size_t l = 0; l < p.layer_count(); ++l) {
      for (const bool is_weight : {true, false}) {
        std::vector<double>& block = is_weight ? p.weights[l] : p.biases[l];
        const std::vector<double>& gblock = is_weight ? grads.weights[l] : grads.biases[l];
        for (std::size_t i = 0; i < block.size(); ++i) {
          const double saved = block[i];
          block[i] = saved + step;
          const double up = loss_at(p, x, label);
          block[i] = saved - step;
          const double down = loss_at(p, x, label);
          block[i] = saved;
          const double fd = (up - down) / (2.0 * step);
          const double rel =
              std::abs(fd - gblock[i]) / std::max({std::abs(fd), std::abs(gblock[i]), 1e-3});
          worst = std::max(worst, rel);
        }
      }
    }
    ++networks;
  }

  Outcome out;
  out.pass = networks >= 100 && worst <= 1e-4;
  out.detail = fmt("max rel err %.2e over %d networks (tolerance 1e-4)", worst, networks);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 2: eigen residuals <= 1e-8 * ||C|| on 1000 random Hermitian
// matrices (M <= 9); criterion estimates invariant under spectrum scaling.
// ---------------------------------------------------------------------------

Outcome criterion2(Context&) {
  Rng rng(0xC2);
  double worst_residual = 0.0;
  int scale_violations = 0;

  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(8));
    CMat g(m, m);
    for (cplx& v : g.flat()) v = rng.complex_normal(1.0);
    CMat c(m, m);
    if (trial % 2 == 0) {
      c = multiply(g, hermitian_transpose(g));  // PSD
    } else {
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) c(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    }

    const EigenDecomposition dec = hermitian_eig(c, true);
    const double norm = frobenius_norm(c);
    for (int j = 0; j < m; ++j) {
      double residual = 0.0;
      for (int i = 0; i < m; ++i) {
        cplx cv = 0.0;
        for (int k = 0; k < m; ++k) cv += c(i, k) * dec.vectors(k, j);
        residual += std::norm(cv - dec.values[static_cast<std::size_t>(j)] * dec.vectors(i, j));
      }
      worst_residual = std::max(worst_residual, std::sqrt(residual) / std::max(norm, 1e-300));
    }

    const EigenSpectrum spectrum = eigen_spectrum(c);
    const int n = 2 + static_cast<int>(rng.below(150));
    for (const IcVariant variant : {IcVariant::Aic, IcVariant::Mdl}) {
      const int reference = information_criterion(spectrum, n, variant).estimate;
      for (const double alpha : {1e-6, 1e-2, 1e3, 1e8}) {
        EigenSpectrum scaled = spectrum;
        for (double& v : scaled.values) v *= alpha;
        if (information_criterion(scaled, n, variant).estimate != reference) ++scale_violations;
      }
    }
  }

  Outcome out;
  out.pass = worst_residual <= 1e-8 && scale_violations == 0;
  out.detail = fmt("max residual %.2e (tol 1e-8), scale-invariance violations %d / 8000",
                   worst_residual, scale_violations);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: MDL accuracy >= 0.99 at 30 dB, N = 100, balanced 4000-sample
// test set.
// ---------------------------------------------------------------------------

Outcome criterion3(Context& ctx) {
  ScenarioConfig cfg;
  cfg.num_antennas = 9;
  cfg.num_snapshots = 100;
  cfg.max_order = 3;
  cfg.snr = SnrLaw::fixed_db(30.0);
  const auto testset = draw_balanced_dataset(cfg, 4000, ctx.seed ^ 0xC3);
  const EvalReport report = evaluate_classical(IcVariant::Mdl, testset, cfg.max_order);

  Outcome out;
  out.pass = report.overall_accuracy >= 0.99;
  out.detail = fmt("MDL accuracy %.4f at 30 dB, N=100, 4000 samples (need >= 0.99)",
                   report.overall_accuracy);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: table orderings at desk scale. CovNet > MDL by at least one
// point, CompNet < MDL, AIC lowest. One retry with a second seed.
// ---------------------------------------------------------------------------

bool table_orderings(const TableArtifacts& t, std::string& detail) {
  const double cov = t.covnet.overall_accuracy;
  const double comp = t.compnet.overall_accuracy;
  const double aic = t.aic.overall_accuracy;
  const double mdl = t.mdl.overall_accuracy;
  detail = fmt("covnet %.4f compnet %.4f aic %.4f mdl %.4f", cov, comp, aic, mdl);
  return cov >= mdl + 0.01 && comp < mdl && aic < cov && aic < comp && aic < mdl;
}

Outcome criterion4(Context& ctx) {
  Outcome out;
  TableArtifacts table = compute_table_artifacts(desk_spec(ctx, ctx.seed));
  std::string detail;
  if (table_orderings(table, detail)) {
    ctx.table = table;
    ctx.table_seed = ctx.seed;
    out.pass = true;
    out.detail = detail + fmt(" (seed %llu)", static_cast<unsigned long long>(ctx.seed));
    return out;
  }
  // The criterion allows one rerun with a second seed before declaring a
  // regression.
  const std::uint64_t second = ctx.seed + 1;
  TableArtifacts retry = compute_table_artifacts(desk_spec(ctx, second));
  std::string retry_detail;
  if (table_orderings(retry, retry_detail)) {
    ctx.table = retry;
    ctx.table_seed = second;
    out.pass = true;
    out.detail = fmt("first seed failed [%s]; second seed passed [%s]", detail.c_str(),
                     retry_detail.c_str());
    return out;
  }
  ctx.table = table;
  ctx.table_seed = ctx.seed;
  out.pass = false;
  out.detail = fmt("both seeds failed: [%s] and [%s]", detail.c_str(), retry_detail.c_str());
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: confusion bias directions on the shared test set, each by a
// factor >= 1.5.
// ---------------------------------------------------------------------------

Outcome criterion5(Context& ctx) {
  if (!ctx.table) {
    ctx.table = compute_table_artifacts(desk_spec(ctx, ctx.seed));
    ctx.table_seed = ctx.seed;
  }
  const double mdl_over = static_cast<double>(ctx.table->mdl.overfit_mass());
  const double mdl_under = static_cast<double>(ctx.table->mdl.underfit_mass());
  const double cov_over = static_cast<double>(ctx.table->covnet.overfit_mass());
  const double cov_under = static_cast<double>(ctx.table->covnet.underfit_mass());

  const bool mdl_ok = mdl_over >= 1.5 * mdl_under;
  const bool cov_ok = cov_under >= 1.5 * cov_over;
  Outcome out;
  out.pass = mdl_ok && cov_ok;
  out.detail = fmt("MDL over/under %.0f/%.0f (x%.2f), CovNet under/over %.0f/%.0f (x%.2f), need >= 1.5",
                   mdl_over, mdl_under, mdl_under > 0 ? mdl_over / mdl_under : 999.0, cov_under,
                   cov_over, cov_over > 0 ? cov_under / cov_over : 999.0);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: SNR sweep ordering. CovNet >= both baselines at every grid
// point, largest margin at the lowest point.
// ---------------------------------------------------------------------------

Outcome criterion6(Context& ctx) {
  const SnrSweepResult sweep = run_snr_sweep(desk_spec(ctx, ctx.table_seed ? ctx.table_seed : ctx.seed));

  bool dominated = true;
  double first_margin = 0.0, best_margin = -1.0;
  std::string table;
  for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
    const double baseline = std::max(sweep.aic[i], sweep.mdl[i]);
    const double margin = sweep.covnet[i] - baseline;
    if (i == 0) first_margin = margin;
    best_margin = std::max(best_margin, margin);
    if (sweep.covnet[i] < baseline) dominated = false;
    table += fmt(" %gdB:%+.3f", sweep.snr_db[i], margin);
  }
  const bool margin_at_lowest = first_margin >= best_margin - 1e-12;

  Outcome out;
  out.pass = dominated && margin_at_lowest;
  out.detail = fmt("margins vs best baseline:%s%s", table.c_str(),
                   dominated ? (margin_at_lowest ? "" : "; largest margin not at 0 dB")
                             : "; CovNet below a baseline");
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: snapshot sweep. Matched CovNet beats both baselines at
// N in {2, 5}; MDL within 2 points of or above CovNet at N = 50; cross-N
// CovNet within 3 points of matched at N in {5, 20}.
// ---------------------------------------------------------------------------

Outcome criterion7(Context& ctx) {
  const SnapshotSweepResult sweep =
      run_snapshot_sweep(desk_spec(ctx, ctx.table_seed ? ctx.table_seed : ctx.seed));

  auto index_of = [&](int n) {
    for (std::size_t i = 0; i < sweep.snapshots.size(); ++i)
      if (sweep.snapshots[i] == n) return i;
    throw config_error("snapshot grid missing N=" + std::to_string(n));
  };

  std::string detail;
  bool ok = true;
  for (const int n : {2, 5}) {
    const std::size_t i = index_of(n);
    const bool beats = sweep.matched[i] > sweep.aic[i] && sweep.matched[i] > sweep.mdl[i];
    ok = ok && beats;
    detail += fmt("N=%d matched %.3f (aic %.3f mdl %.3f)%s; ", n, sweep.matched[i], sweep.aic[i],
                  sweep.mdl[i], beats ? "" : " VIOLATION");
  }
  {
    const std::size_t i = index_of(50);
    const bool close = sweep.mdl[i] >= sweep.matched[i] - 0.02;
    ok = ok && close;
    detail += fmt("N=50 mdl %.3f vs matched %.3f%s; ", sweep.mdl[i], sweep.matched[i],
                  close ? "" : " VIOLATION");
  }
  for (const int n : {5, 20}) {
    const std::size_t i = index_of(n);
    const bool close = std::abs(sweep.cross_n10[i] - sweep.matched[i]) <= 0.03;
    ok = ok && close;
    detail += fmt("N=%d cross %.3f vs matched %.3f%s; ", n, sweep.cross_n10[i], sweep.matched[i],
                  close ? "" : " VIOLATION");
  }

  Outcome out;
  out.pass = ok;
  out.detail = detail;
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: online adaptation curve on the calibrated scenario.
// ---------------------------------------------------------------------------

Outcome criterion8(Context& ctx) {
  const OnlineCurveResult curve =
      run_online_curve(desk_spec(ctx, ctx.table_seed ? ctx.table_seed : ctx.seed));

  auto index_of = [&](std::uint64_t d) {
    for (std::size_t i = 0; i < curve.batch_counts.size(); ++i)
      if (curve.batch_counts[i] == d) return i;
    throw config_error("online curve missing batch count " + std::to_string(d));
  };

  const std::size_t i1 = index_of(1);
  const std::size_t i100 = index_of(100);
  const std::size_t i1000 = index_of(1000);

  const bool one_batch_90 = curve.pretrained[i1] > 0.90;
  const bool one_batch_aic = curve.pretrained[i1] > curve.aic_ref;
  const bool hundred_mdl =
      curve.pretrained[i100] > curve.mdl_ref && curve.pretrained[i1000] > curve.mdl_ref;
  bool pre_beats_random = true;
  for (std::size_t i = 0; i < curve.batch_counts.size(); ++i)
    pre_beats_random = pre_beats_random && curve.pretrained[i] > curve.random_init[i];
  const double gap = curve.full_ref - curve.pretrained[i100];
  const bool gap_ok = std::abs(gap - 0.015) <= 0.01;

  Outcome out;
  out.pass = one_batch_90 && one_batch_aic && hundred_mdl && pre_beats_random && gap_ok;
  out.detail = fmt(
      "1-batch %.4f (>0.90 %s, >aic %.4f %s); 100/1000-batch %.4f/%.4f vs mdl %.4f %s; "
      "pretrained>random %s; gap to full %.4f-%.4f=%.4f in [0.005,0.025] %s",
      curve.pretrained[i1], one_batch_90 ? "ok" : "FAIL", curve.aic_ref,
      one_batch_aic ? "ok" : "FAIL", curve.pretrained[i100], curve.pretrained[i1000],
      curve.mdl_ref, hundred_mdl ? "ok" : "FAIL", pre_beats_random ? "ok" : "FAIL",
      curve.full_ref, curve.pretrained[i100], gap, gap_ok ? "ok" : "FAIL");
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical reruns with --jobs 1; bit-exact checkpoint
// round trip.
// ---------------------------------------------------------------------------

Outcome criterion9(Context& ctx) {
  const int saved_threads = max_threads();
  set_max_threads(1);

  // Dataset dumps.
  ScenarioConfig cfg;
  const auto dump_a = ctx.workdir / "repro_a.mosdata";
  const auto dump_b = ctx.workdir / "repro_b.mosdata";
  for (const auto& path : {dump_a, dump_b}) {
    const auto samples = draw_balanced_dataset(cfg, 512, ctx.seed ^ 0xC9);
    write_dataset(path, {cfg.num_antennas, cfg.num_snapshots, cfg.max_order, samples.size()},
                  samples);
  }
  const bool dumps_equal = slurp(dump_a) == slurp(dump_b);

  // Full experiment rerun in two fresh directories (nothing shared).
  ExperimentSpec spec_a = desk_spec(ctx, ctx.seed ^ 0x99);
  spec_a.out_dir = ctx.workdir / "repro_run_a";
  ExperimentSpec spec_b = spec_a;
  spec_b.out_dir = ctx.workdir / "repro_run_b";
  std::filesystem::remove_all(spec_a.out_dir);
  std::filesystem::remove_all(spec_b.out_dir);
  const SnrSweepResult sweep_a = run_snr_sweep(spec_a);
  const SnrSweepResult sweep_b = run_snr_sweep(spec_b);
  const bool sweeps_equal = slurp(sweep_a.csv_path) == slurp(sweep_b.csv_path);

  // Checkpoint round trip from the run above.
  bool ckpt_equal = false;
  for (const auto& entry : std::filesystem::directory_iterator(spec_a.out_dir)) {
    if (entry.path().extension() != ".ckpt") continue;
    const Checkpoint loaded = load_checkpoint(entry.path());
    const auto resaved = ctx.workdir / "repro_resaved.ckpt";
    save_checkpoint(loaded.params, loaded.adam ? &*loaded.adam : nullptr, resaved);
    ckpt_equal = slurp(entry.path()) == slurp(resaved);
    break;
  }

  set_max_threads(saved_threads);

  Outcome out;
  out.pass = dumps_equal && sweeps_equal && ckpt_equal;
  out.detail = fmt("dataset dumps %s, sweep CSVs %s, checkpoint round-trip %s",
                   dumps_equal ? "identical" : "DIFFER", sweeps_equal ? "identical" : "DIFFER",
                   ckpt_equal ? "bit-exact" : "DIFFERS");
  return out;
}

const char* kDescriptions[9] = {
    "gradient oracle (finite differences)",
    "eigen residuals and criterion scale invariance",
    "classical high-SNR consistency",
    "accuracy-table orderings at desk scale",
    "confusion bias directions",
    "SNR sweep ordering",
    "snapshot sweep",
    "online adaptation curve",
    "reproducibility and checkpoint round-trip",
};

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  std::vector<int> selected;
  int jobs = 0;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "acceptance: missing value for %s\n", arg.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--criterion") {
      selected.push_back(std::atoi(next()));
    } else if (arg == "--workdir") {
      ctx.workdir = next();
    } else if (arg == "--seed") {
      ctx.seed = std::strtoull(next(), nullptr, 10);
    } else if (arg == "--jobs") {
      jobs = std::atoi(next());
    } else {
      std::fprintf(stderr, "acceptance: unknown argument %s\n", arg.c_str());
      return 2;
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  set_max_threads(jobs);
  std::filesystem::create_directories(ctx.workdir);

  const std::function<Outcome(Context&)> criteria[9] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9,
  };

  int failures = 0;
  for (const int k : selected) {
    if (k < 1 || k > 9) {
      std::fprintf(stderr, "acceptance: criterion %d out of range\n", k);
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k - 1](ctx);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] C%d %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", k,
                kDescriptions[k - 1], out.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures;
}

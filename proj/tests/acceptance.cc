// Copyright 2026 The camaudit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the nine acceptance criteria in order and prints one PASS/FAIL line
// for each. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cam_oracles.h"
#include "camaudit/cams/cams.h"
#include "camaudit/cli/commands.h"
#include "camaudit/data/manifest.h"
#include "camaudit/eval/curves.h"
#include "camaudit/eval/di_audit.h"
#include "camaudit/eval/ordering.h"
#include "camaudit/model/train.h"
#include "camaudit/multispeaker/localization.h"
#include "camaudit/multispeaker/scenarios.h"
#include "gradcheck.h"
#include "test_util.h"

namespace camaudit {
namespace {

namespace fs = std::filesystem;
using testing::Grid;

// Pinned tolerances and thresholds.
constexpr double kGradRelTolerance = 1e-4;
constexpr std::size_t kMinGradProbes = 200;
constexpr double kOracleTolerance = 1e-12;
constexpr std::size_t kMinOracleCases = 50;
constexpr double kTanhTolerance = 1e-12;
constexpr double kAucTolerance = 1e-12;
constexpr double kInsertionMargin = 0.05;  // CAM over random
constexpr double kDeletionMargin = 0.05;   // CAM under time-aligned
constexpr std::size_t kMinSingleItems = 200;
constexpr std::size_t kMinScenarios = 500;
constexpr double kLocalizationGain = 0.10;  // best Layer-CAM row over Original
constexpr double kOracleSlack = 0.02;
constexpr std::size_t kAuditSteps = 20;
constexpr std::size_t kScenariosPerSpeaker = 16;
constexpr std::uint64_t kSeed = 20220;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---- 1: gradients ----------------------------------------------------

Outcome gradient_correctness() {
  std::mt19937_64 rng(1);
  std::size_t probes = 0;
  double worst = 0.0;
  std::string worst_kind;
  auto take = [&](const testing::ProbeStats& s) {
    probes += s.probes;
    if (s.worst >= worst) worst = s.worst, worst_kind = s.kind;
  };
  const auto cases = testing::layer_cases();
  for (std::size_t n = 0; n < cases.size(); ++n) {
    auto layer = cases[n].make();
    nn::Rng init(50 + n);
    layer->initialize(init);
    for (nn::Tensor* p : layer->parameters())
      for (double& v : p->values()) v += 0.1 * std::uniform_real_distribution<double>(-1, 1)(rng);
    take(testing::probe_layer(*layer, testing::kink_free_tensor(cases[n].input, rng), 16, rng));
  }
  ModelConfig mc = ModelConfig::desk();
  mc.num_classes = 8;
  mc.base_channels = 4;
  mc.embedding_dim = 16;
  mc.seed = 3;
  const Model model = build_model(mc);
  const Spectrogram x = testing::random_spectrogram(40, 24, rng);
  take(testing::probe_model_taps(model, x, nn::ScoreKind::kLogit, 16, rng));
  take(testing::probe_model_taps(model, x, nn::ScoreKind::kPosterior, 16, rng));
  Outcome o;
  o.pass = probes >= kMinGradProbes && worst < kGradRelTolerance;
  o.detail = std::to_string(probes) + " probes over " + std::to_string(cases.size()) +
             " layer cases and model taps, worst relative error " + fmt(worst) + " (" + worst_kind +
             "), limit " + fmt(kGradRelTolerance);
  return o;
}

// ---- 2: CAM oracles --------------------------------------------------

double max_diff(const SaliencyMap& m, const Grid& g) {
  if (m.height != g.size() || m.width != g[0].size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.height; ++i)
    for (std::size_t j = 0; j < m.width; ++j) worst = std::max(worst, std::abs(m.at(i, j) - g[i][j]));
  return worst;
}

double score_cam_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModelConfig mc = ModelConfig::desk();
  mc.base_channels = 1;
  mc.num_classes = 5;
  mc.embedding_dim = 8;
  mc.seed = seed;
  const Model model = build_model(mc);
  const Spectrogram x =
      testing::random_spectrogram(40, std::uniform_int_distribution<std::size_t>(8, 30)(rng), rng);
  const nn::Tensor act = forward(model, x).taps.at("S1");
  Grid a(act.dim(0), std::vector<double>(act.dim(1)));
  for (std::size_t i = 0; i < act.dim(0); ++i)
    for (std::size_t j = 0; j < act.dim(1); ++j) a[i][j] = act.at(i, j, 0);
  const Grid mask = testing::oracle_minmax(testing::oracle_upsample(a, x.freq_bins, x.frames));
  Spectrogram masked = x;
  for (std::size_t f = 0; f < x.freq_bins; ++f)
    for (std::size_t t = 0; t < x.frames; ++t) masked.at(f, t) = x.at(f, t) * mask[f][t];
  const double w = predict_posteriors(model, masked)[predict_top1(model, x).speaker];
  Grid expected = a;
  for (auto& row : expected)
    for (double& v : row) v = testing::relu(w * v);
  return max_diff(score_cam(model, x, "S1"), expected);
}

Outcome cam_oracles() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> side(1, 6), channels(1, 4);
  double worst[4] = {0, 0, 0, 0};
  for (std::size_t n = 0; n < kMinOracleCases; ++n) {
    const nn::Shape shape{side(rng), side(rng), channels(rng)};
    const nn::Tensor a = testing::random_tensor(shape, rng, 0.0, 1.0);
    const nn::Tensor g = testing::random_tensor(shape, rng, -1.0, 1.0);
    worst[0] = std::max(worst[0], max_diff(grad_cam(a, g), testing::oracle_grad_cam(a, g)));
    worst[1] = std::max(worst[1], max_diff(grad_cam_pp(a, g), testing::oracle_grad_cam_pp(a, g)));
    worst[3] = std::max(worst[3], max_diff(layer_cam(a, g), testing::oracle_layer_cam(a, g)));
    worst[2] = std::max(worst[2], score_cam_case(1000 + n));
  }
  Outcome o;
  const char* names[4] = {"gradcam", "gradcampp", "scorecam", "layercam"};
  o.detail = std::to_string(kMinOracleCases) + " cases each;";
  for (int k = 0; k < 4; ++k) {
    o.pass = o.pass && worst[k] <= kOracleTolerance;
    o.detail += std::string(" ") + names[k] + " " + fmt(worst[k]);
  }
  o.detail += ", limit " + fmt(kOracleTolerance);
  return o;
}

// ---- 3: normalisation ------------------------------------------------

Outcome normalization() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Outcome o;
  bool range = true, ranks = true;
  for (int trial = 0; trial < 100; ++trial) {
    SaliencyMap m(7, 9);
    for (double& v : m.values) v = u(rng);
    const SaliencyMap mm = normalize_minmax(m);
    const SaliencyMap sc = tanh_rescale(mm, 5.0);
    for (double v : mm.values) range = range && v >= 0.0 && v <= 1.0;
    for (double v : sc.values) range = range && v >= 0.0 && v <= 1.0;
    ranks = ranks && rank_bins(m).bins == rank_bins(mm).bins && rank_bins(m).bins == rank_bins(sc).bins;
  }
  SaliencyMap unit(1, 2);
  unit.values = {0.0, 1.0};
  const double tanh_err = std::abs(tanh_rescale(normalize_minmax(unit), 5.0).values[1] - std::tanh(5.0));
  const SaliencyMap flat = normalize_minmax(SaliencyMap(3, 4, 2.5));
  bool degenerate = flat.degenerate;
  for (double v : flat.values) degenerate = degenerate && v == 0.0;
  for (double v : tanh_rescale(flat).values) degenerate = degenerate && v == 0.0;
  o.pass = range && ranks && tanh_err <= kTanhTolerance && degenerate;
  o.detail = std::string("range ") + (range ? "ok" : "violated") + ", rank order " +
             (ranks ? "invariant" : "changed") + ", |tanh(5) error| " + fmt(tanh_err) + ", degenerate " +
             (degenerate ? "zero+flag" : "wrong");
  return o;
}

// ---- shared trained model --------------------------------------------

struct Trained {
  Corpus corpus;
  Model model;
  double heldout = 0.0;
};

Trained train_default() {
  CorpusConfig cc;
  cc.seed = kSeed;
  Corpus corpus = generate_corpus(cc);
  ModelConfig mc = ModelConfig::desk();
  mc.num_classes = corpus.manifest.num_speakers;
  mc.seed = kSeed;
  TrainConfig tc;
  tc.seed = kSeed;
  TrainResult r = train(build_model(mc), corpus, tc);
  return {std::move(corpus), std::move(r.model), r.log.final_heldout_top1()};
}

std::vector<EvalItem> single_items(const Trained& t) {
  return single_speaker_items(t.model, t.corpus, RunConfig{}.di_items_per_speaker,
                              TrainConfig{}.heldout_per_speaker);
}

// ---- 4: Score-CAM without gradients ----------------------------------

Outcome score_cam_gradient_free(const Trained& t) {
  const auto before = nn::gradient_call_count();
  std::vector<EvalItem> items = single_items(t);
  items.resize(32);
  DiAuditConfig dc;
  dc.cams = {CamKind::kScoreCam};
  dc.steps = 10;
  const DiAuditResult di = run_di_audit(t.model, items, dc);
  ScenarioConfig sc;
  sc.per_speaker = 1;
  sc.seed = kSeed;
  LocalizationConfig lc;
  lc.cams = {CamKind::kScoreCam};
  scenario_eval(t.model, build_scenarios(t.corpus.bank, Pattern::kABA, sc), lc);
  const auto calls = nn::gradient_call_count() - before;
  Outcome o;
  o.pass = calls == 0;
  o.detail = "gradient calls during Score-CAM deletion/insertion (" + std::to_string(items.size()) +
             " inputs) and localization (32 scenarios, 7 tap sets): " + std::to_string(calls);
  return o;
}

// ---- 5: deletion/insertion machinery ---------------------------------

Outcome di_machinery(const Trained& t) {
  Outcome o;
  const Curve flat{{0, 0.5, 1}, {1, 1, 1}, Direction::kDeletion};
  const Curve ramp{{0, 0.25, 0.5, 0.75, 1}, {0, 0.25, 0.5, 0.75, 1}, Direction::kInsertion};
  const double flat_err = std::abs(auc(flat) - 1.0), ramp_err = std::abs(auc(ramp) - 0.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double random_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Curve c;
    const std::size_t steps = 1 + trial % 50;
    for (std::size_t i = 0; i <= steps; ++i) {
      c.xs.push_back(static_cast<double>(i) / steps);
      c.ys.push_back(u(rng));
    }
    double area = 0.0;
    for (std::size_t i = 1; i < c.xs.size(); ++i)
      area += (c.xs[i] - c.xs[i - 1]) * (c.ys[i] + c.ys[i - 1]) / 2.0;
    random_err = std::max(random_err, std::abs(auc(c) - area));
  }
  const bool auc_ok = flat_err <= kAucTolerance && ramp_err <= kAucTolerance && random_err <= kAucTolerance;

  std::vector<EvalItem> items = single_items(t);
  items.resize(24);
  std::vector<BinOrdering> cam_orders, rand_orders, time_orders;
  bool perms = true;
  for (std::size_t n = 0; n < items.size(); ++n) {
    const Spectrogram& x = items[n].features;
    const auto raw = compute_raw_maps(t.model, x, CamKind::kLayerCam, {"S4"}, items[n].label);
    cam_orders.push_back(rank_bins(tap_set_map(raw, "S4", x.freq_bins, x.frames), 1 + n % 3));
    rand_orders.push_back(baseline_ordering(OrderingSource::kRandom, x.freq_bins, x.frames, n));
    time_orders.push_back(baseline_ordering(OrderingSource::kTimeAligned, x.freq_bins, x.frames));
    perms = perms && is_permutation(cam_orders.back()) && is_permutation(rand_orders.back()) &&
            is_permutation(time_orders.back());
  }
  bool complementary = true;
  std::size_t points = 0;
  for (const auto* orders : {&cam_orders, &rand_orders, &time_orders}) {
    std::vector<BinOrdering> flipped;
    for (const auto& ord : *orders) flipped.push_back(reversed(ord));
    for (std::size_t steps : {7u, 20u}) {
      const Curve ins = insertion_curve(t.model, items, *orders, steps);
      const Curve del = deletion_curve(t.model, items, flipped, steps);
      for (std::size_t i = 0; i <= steps; ++i, ++points)
        complementary = complementary && ins.ys[i] == del.ys[steps - i];
    }
  }
  o.pass = auc_ok && perms && complementary;
  o.detail = "AUC errors constant " + fmt(flat_err) + ", ramp " + fmt(ramp_err) + ", random " +
             fmt(random_err) + " (limit " + fmt(kAucTolerance) + "); complementarity " +
             (complementary ? "exact" : "broken") + " at " + std::to_string(points) +
             " points; orderings " + (perms ? "all permutations" : "not permutations");
  return o;
}

// ---- 6: single-speaker direction -------------------------------------

void print_summary(const DiAuditResult& r) {
  write_auc_summary(std::cout, r);
  std::cout.flush();
}

Outcome single_speaker_direction(const Trained& t) {
  const std::vector<EvalItem> items = single_items(t);
  DiAuditConfig dc;
  dc.steps = kAuditSteps;
  dc.seed = kSeed;
  const DiAuditResult r = run_di_audit(t.model, items, dc);
  print_summary(r);
  const DiEntry& random = r.at("random");
  const DiEntry& timed = r.at("time-aligned");
  Outcome o;
  o.pass = items.size() >= kMinSingleItems;
  o.detail = std::to_string(items.size()) + " utterances, steps " + std::to_string(kAuditSteps) +
             "; random ins " + fmt(random.insertion_auc) + ", time-aligned del " + fmt(timed.deletion_auc);
  for (CamKind cam : dc.cams) {
    const DiEntry& e = r.at(to_string(cam));
    const bool ins = e.insertion_auc >= random.insertion_auc + kInsertionMargin;
    const bool del = e.deletion_auc <= timed.deletion_auc - kDeletionMargin;
    o.pass = o.pass && ins && del;
    o.detail += "; " + e.cam + " ins " + fmt(e.insertion_auc) + (ins ? " ok" : " SHORT") + ", del " +
                fmt(e.deletion_auc) + (del ? " ok" : " SHORT");
  }
  return o;
}

// ---- 7: multi-speaker direction --------------------------------------

Outcome multi_speaker_direction(const Trained& t) {
  ScenarioConfig sc;
  sc.per_speaker = kScenariosPerSpeaker;
  sc.seed = kSeed;
  const ScenarioSet set = build_scenarios(t.corpus.bank, Pattern::kBAB, sc);
  const LocalizationResult loc = scenario_eval(t.model, set, LocalizationConfig{});
  write_localization_csv(std::cout, {loc});
  DiAuditConfig dc;
  dc.steps = kAuditSteps;
  dc.seed = kSeed;
  const DiAuditResult di = run_di_audit(t.model, scenario_items(t.model, set), dc);
  print_summary(di);

  const DiEntry& layer = di.at("layercam");
  bool a = true;
  for (const char* other : {"gradcampp", "scorecam"}) {
    const DiEntry& e = di.at(other);
    a = a && layer.deletion_auc < e.deletion_auc && layer.insertion_auc > e.insertion_auc;
  }
  const double best = loc.best(CamKind::kLayerCam);
  const bool b = best >= loc.original + kLocalizationGain;
  double top_cell = 0.0;
  for (const auto& row : loc.cells)
    for (double v : row) top_cell = std::max(top_cell, v);
  const bool c = loc.oracle >= top_cell - kOracleSlack;
  if (!a) {
    std::cout << "!!! Layer-CAM does not dominate Grad-CAM++ and Score-CAM on B-A-B "
                 "deletion/insertion; full comparison above !!!\n";
  }
  Outcome o;
  o.pass = set.size() >= kMinScenarios && a && b && c;
  o.detail = std::to_string(set.size()) + " scenarios; (a) layercam del " + fmt(layer.deletion_auc) +
             " vs gradcampp " + fmt(di.at("gradcampp").deletion_auc) + ", scorecam " +
             fmt(di.at("scorecam").deletion_auc) + "; ins " + fmt(layer.insertion_auc) + " vs " +
             fmt(di.at("gradcampp").insertion_auc) + ", " + fmt(di.at("scorecam").insertion_auc) +
             (a ? " ok" : " FAILED") + "; (b) best layercam " + fmt(best) + " vs original " +
             fmt(loc.original) + (b ? " ok" : " FAILED") + "; (c) oracle " + fmt(loc.oracle) +
             " vs best cell " + fmt(top_cell) + (c ? " ok" : " FAILED");
  return o;
}

// ---- 8: shapes -------------------------------------------------------

Outcome full_scale_shapes() {
  const Model model = build_model(ModelConfig::full_scale());
  const auto shapes = model.tap_shapes();
  Outcome o;
  o.pass = shapes.at("S1") == nn::Shape{80, 200, 32} && shapes.at("S2") == nn::Shape{40, 100, 64} &&
           shapes.at("S3") == nn::Shape{20, 50, 128} && shapes.at("S4") == nn::Shape{10, 25, 256} &&
           model.pooled_length() == 5120;
  for (const char* tap : Model::kTapNames) {
    const auto& s = shapes.at(tap);
    o.detail += std::string(tap) + " " + std::to_string(s[0]) + "x" + std::to_string(s[1]) + "x" +
                std::to_string(s[2]) + ", ";
  }
  o.detail += "pooled " + std::to_string(model.pooled_length());
  return o;
}

// ---- 9: end-to-end determinism ---------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string run_pipeline(const fs::path& root) {
  fs::remove_all(root);
  std::ostringstream log, err;
  auto step = [&](const std::string& sub, const std::function<void(RunConfig&)>& edit) {
    RunConfig c;
    c.subcommand = sub;
    c.num_speakers = 6;
    c.utts_per_speaker = 12;
    c.epochs = 3;
    c.manifest = (root / "data" / "manifest.txt").string();
    c.checkpoint = (root / "model.ckpt").string();
    c.out = (root / "out").string();
    c.steps = 5;
    c.di_items_per_speaker = 3;
    c.scenarios_per_speaker = 2;
    edit(c);
    const int code = run_command(c, log, err);
    if (code != kExitOk && !(sub == "train" && code == kExitFailure))
      throw std::runtime_error(sub + " exited " + std::to_string(code) + ": " + err.str());
  };
  step("gen", [&](RunConfig& c) { c.out = (root / "data").string(); });
  step("train", [](RunConfig&) {});
  step("audit-di", [](RunConfig&) {});
  step("audit-di", [](RunConfig& c) { c.mode = "multi"; });
  step("audit-local", [](RunConfig&) {});
  return err.str();
}

Outcome end_to_end_determinism() {
  const fs::path base = fs::temp_directory_path() / "camaudit_acceptance";
  const fs::path a = base / "a", b = base / "b";
  run_pipeline(a);
  run_pipeline(b);
  Outcome o;
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a);
    const std::string ext = rel.extension().string();
    if (ext != ".csv" && ext != ".txt" && ext != ".ckpt") continue;
    ++compared;
    if (slurp(entry.path()) != slurp(b / rel)) {
      o.pass = false;
      o.detail += "differs: " + rel.string() + "; ";
    }
  }
  o.pass = o.pass && compared > 20;
  o.detail += std::to_string(compared) + " CSV/manifest/checkpoint files compared byte for byte";
  fs::remove_all(base);
  return o;
}

}  // namespace
}  // namespace camaudit

int main() {
  using namespace camaudit;
  int failures = 0;
  auto run = [&](int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << title << " (" << fmt(secs)
              << " s): " << o.detail << std::endl;
  };

  run(1, "gradient correctness", gradient_correctness);
  run(2, "CAM oracle equivalence", cam_oracles);
  run(3, "normalization", normalization);
  run(8, "full-scale tap shapes", full_scale_shapes);

  std::cout << "training the default desk model..." << std::endl;
  const Trained trained = train_default();
  std::cout << "held-out top-1 " << trained.heldout << std::endl;
  run(4, "Score-CAM is gradient-free", [&] { return score_cam_gradient_free(trained); });
  run(5, "deletion/insertion machinery", [&] { return di_machinery(trained); });
  run(6, "single-speaker deletion/insertion direction", [&] { return single_speaker_direction(trained); });
  run(7, "multi-speaker B-A-B direction", [&] { return multi_speaker_direction(trained); });
  run(9, "end-to-end determinism", end_to_end_determinism);

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}

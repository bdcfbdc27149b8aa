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

#include "camaudit/cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "camaudit/cams/cams.h"
#include "camaudit/cams/saliency_io.h"
#include "camaudit/data/vad.h"
#include "camaudit/eval/di_audit.h"
#include "camaudit/model/checkpoint.h"
#include "camaudit/model/train.h"
#include "camaudit/multispeaker/localization.h"
#include "camaudit/multispeaker/scenarios.h"

namespace camaudit {
namespace fs = std::filesystem;
namespace {

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw std::runtime_error(std::string(what) + " not found: " + path);
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

ScenarioConfig scenario_config(const RunConfig& config) {
  ScenarioConfig sc;
  sc.per_speaker = config.scenarios_per_speaker;
  sc.seed = config.seed;
  return sc;
}

}  // namespace

std::vector<EvalItem> single_speaker_items(const Model& model, const Corpus& corpus,
                                           std::size_t per_speaker,
                                           std::size_t heldout_per_speaker) {
  std::vector<std::size_t> total(corpus.manifest.num_speakers, 0);
  for (const auto& u : corpus.utterances) ++total[u.speaker];
  std::vector<EvalItem> items;
  for (const auto& u : corpus.utterances) {
    if (u.index >= per_speaker || is_heldout(u, total[u.speaker], heldout_per_speaker)) continue;
    items.push_back({model.featurize(vad_trim(u.spec)), u.speaker});
  }
  return items;
}

int cmd_gen(const RunConfig& config, std::ostream& log) {
  const fs::path dir = config.out;
  const fs::path manifest = dir / "manifest.txt";
  if (fs::exists(manifest) && !config.force) {
    throw ConfigError(manifest.string() + " already exists; pass --force to overwrite");
  }
  CorpusConfig cc;
  cc.num_speakers = config.num_speakers;
  cc.utts_per_speaker = config.utts_per_speaker;
  cc.seed = config.seed;
  const Corpus corpus = generate_corpus(cc);
  write_corpus(corpus, dir);
  log << "wrote " << corpus.utterances.size() << " utterances of " << cc.num_speakers
      << " speakers to " << manifest.string() << '\n';
  return kExitOk;
}

int cmd_train(const RunConfig& config, std::ostream& log) {
  require_file(config.manifest, "manifest");
  const Corpus corpus = load_corpus(config.manifest);
  ModelConfig mc = ModelConfig::desk();
  mc.input_freq_bins = corpus.manifest.freq_bins;
  mc.num_classes = corpus.manifest.num_speakers;
  mc.seed = config.seed;
  TrainConfig tc;
  tc.epochs = config.epochs;
  tc.seed = config.seed;
  const TrainResult result = train(build_model(mc), corpus, tc);
  save_checkpoint_file(result.model, config.checkpoint);
  auto out = open_output(fs::path(config.out) / "train_log.csv");
  result.log.write_csv(out);
  const double acc = result.log.final_heldout_top1();
  log << "held-out top-1 " << acc << " after " << tc.epochs << " epochs; checkpoint "
      << config.checkpoint << '\n';
  if (acc < tc.accuracy_threshold) {
    log << "held-out accuracy below threshold " << tc.accuracy_threshold << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_saliency(const RunConfig& config, std::ostream& log) {
  require_file(config.checkpoint, "checkpoint");
  require_file(config.manifest, "manifest");
  const Model model = load_checkpoint_file(config.checkpoint);
  const Corpus corpus = load_corpus(config.manifest);
  std::vector<std::string> tap_sets = config.taps;
  if (tap_sets.empty()) tap_sets = {"S1", "S2", "S3", "S4"};
  std::vector<std::string> taps;
  for (const auto& set : tap_sets) {
    for (const auto& tap : split_tap_set(set)) {
      if (std::find(taps.begin(), taps.end(), tap) == taps.end()) taps.push_back(tap);
    }
  }
  const fs::path dir = fs::path(config.out) / "saliency";
  std::size_t files = 0;
  for (std::size_t index : config.utterances) {
    if (index >= corpus.utterances.size()) {
      throw ConfigError("utterance " + std::to_string(index) + " out of range; manifest has " +
                        std::to_string(corpus.utterances.size()));
    }
    const auto& u = corpus.utterances[index];
    const Spectrogram features = model.featurize(u.spec);
    const std::string prefix = "utt" + std::to_string(index);
    for (CamKind cam : config.cams) {
      const auto raw = compute_raw_maps(model, features, cam, taps, u.speaker);
      for (const auto& [tap, map] : raw) {
        save_map_csv(dir, prefix, map);
        ++files;
      }
      for (const auto& set : tap_sets) {
        save_pgm(dir, prefix,
                 tap_set_map(raw, set, features.freq_bins, features.frames, config.gamma));
        ++files;
      }
    }
  }
  log << "wrote " << files << " saliency files to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_audit_di(const RunConfig& config, std::ostream& log) {
  require_file(config.checkpoint, "checkpoint");
  require_file(config.manifest, "manifest");
  const Model model = load_checkpoint_file(config.checkpoint);
  const Corpus corpus = load_corpus(config.manifest);
  std::vector<EvalItem> items;
  if (config.mode == "single") {
    items = single_speaker_items(model, corpus, config.di_items_per_speaker,
                                 TrainConfig{}.heldout_per_speaker);
  } else {
    items = scenario_items(model, build_scenarios(corpus.bank, Pattern::kBAB, scenario_config(config)));
  }
  DiAuditConfig dc;
  dc.cams = config.cams;
  dc.tap_set = config.taps.empty() ? "S4" : config.taps.front();
  dc.steps = config.steps;
  dc.gamma = config.gamma;
  dc.patch = config.patch;
  dc.seed = config.seed;
  const DiAuditResult result = run_di_audit(model, items, dc);
  const fs::path dir = fs::path(config.out) / ("di_" + config.mode);
  write_di_outputs(dir, result);
  for (const auto& e : result.entries) {
    log << e.label() << ": deletion AUC " << e.deletion_auc << ", insertion AUC "
        << e.insertion_auc << '\n';
  }
  log << result.num_items << " inputs; curves in " << dir.string() << '\n';
  return kExitOk;
}

int cmd_audit_local(const RunConfig& config, std::ostream& log) {
  require_file(config.checkpoint, "checkpoint");
  require_file(config.manifest, "manifest");
  const Model model = load_checkpoint_file(config.checkpoint);
  const Corpus corpus = load_corpus(config.manifest);
  LocalizationConfig lc;
  lc.cams = config.cams;
  if (!config.taps.empty()) lc.tap_sets = config.taps;
  lc.gamma = config.gamma;
  std::vector<LocalizationResult> results;
  for (Pattern p : {Pattern::kAB, Pattern::kABA, Pattern::kBAB, Pattern::kABC}) {
    results.push_back(scenario_eval(model, build_scenarios(corpus.bank, p, scenario_config(config)), lc));
    log << to_string(p) << ": original " << results.back().original << ", oracle "
        << results.back().oracle << '\n';
  }
  const fs::path path = fs::path(config.out) / "localization.csv";
  auto out = open_output(path);
  write_localization_csv(out, results);
  log << "wrote " << path.string() << '\n';
  return kExitOk;
}

int run_command(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config);
    if (config.subcommand == "gen") return cmd_gen(config, log);
    if (config.subcommand == "train") return cmd_train(config, log);
    if (config.subcommand == "saliency") return cmd_saliency(config, log);
    if (config.subcommand == "audit-di") return cmd_audit_di(config, log);
    if (config.subcommand == "audit-local") return cmd_audit_local(config, log);
    throw ConfigError("no subcommand given");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace camaudit

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

#include "camaudit/multispeaker/localization.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "camaudit/multispeaker/scenarios.h"

namespace camaudit {
namespace {

Recognition recognize_masked(const Model& model, const Spectrogram& features, std::size_t target,
                             const SaliencyMap& map) {
  if (map.height != features.freq_bins || map.width != features.frames) {
    throw std::invalid_argument("map " + std::to_string(map.height) + "x" +
                                std::to_string(map.width) + " does not match input " +
                                std::to_string(features.freq_bins) + "x" +
                                std::to_string(features.frames));
  }
  Spectrogram masked = features;
  for (std::size_t i = 0; i < masked.values.size(); ++i) masked.values[i] *= map.values[i];
  const std::size_t speaker = predict_top1(model, masked).speaker;
  return {speaker, speaker == target};
}

double fraction(std::size_t hits, std::size_t total) {
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

Recognition localize_and_recognize(const Model& model, const ScenarioEntry& scenario,
                                   const SaliencyMap& map) {
  return recognize_masked(model, model.featurize(scenario.spec), scenario.target, map);
}

double LocalizationResult::cell(const std::string& tap_set, CamKind cam) const {
  const auto t = std::find(tap_sets.begin(), tap_sets.end(), tap_set);
  const auto c = std::find(cams.begin(), cams.end(), cam);
  if (t == tap_sets.end() || c == cams.end()) {
    throw std::out_of_range("no cell for " + tap_set + "/" + to_string(cam));
  }
  return cells[t - tap_sets.begin()][c - cams.begin()];
}

double LocalizationResult::best(CamKind cam) const {
  double best = 0.0;
  for (const auto& t : tap_sets) best = std::max(best, cell(t, cam));
  return best;
}

LocalizationResult scenario_eval(const Model& model, const ScenarioSet& scenarios,
                                 const LocalizationConfig& config) {
  if (scenarios.empty()) throw std::invalid_argument("no scenarios to evaluate");
  std::vector<std::string> taps;
  for (const auto& set : config.tap_sets) {
    for (const auto& tap : split_tap_set(set)) {
      if (!model.network().tap_layer(tap)) throw std::invalid_argument("unknown tap " + tap);
      if (std::find(taps.begin(), taps.end(), tap) == taps.end()) taps.push_back(tap);
    }
  }

  LocalizationResult r;
  r.pattern = scenarios.front().pattern;
  r.num_scenarios = scenarios.size();
  r.cams = config.cams;
  r.tap_sets = config.tap_sets;
  std::vector<std::vector<std::size_t>> hits(config.tap_sets.size(),
                                             std::vector<std::size_t>(config.cams.size(), 0));
  std::size_t original = 0, oracle = 0;

  for (const auto& sc : scenarios) {
    const Spectrogram features = model.featurize(sc.spec);
    const std::size_t h = features.freq_bins, w = features.frames;
    if (predict_top1(model, features).speaker == sc.target) ++original;
    if (recognize_masked(model, features, sc.target, oracle_map(sc)).correct) ++oracle;
    for (std::size_t c = 0; c < config.cams.size(); ++c) {
      std::map<std::string, SaliencyMap> raw;
      if (!config.identity_maps) {
        raw = compute_raw_maps(model, features, config.cams[c], taps, sc.target);
      }
      for (std::size_t t = 0; t < config.tap_sets.size(); ++t) {
        SaliencyMap map = config.identity_maps
                              ? SaliencyMap(h, w, 1.0)
                              : tap_set_map(raw, config.tap_sets[t], h, w, config.gamma);
        if (recognize_masked(model, features, sc.target, map).correct) ++hits[t][c];
      }
    }
  }

  r.original = fraction(original, scenarios.size());
  r.oracle = fraction(oracle, scenarios.size());
  r.cells.assign(config.tap_sets.size(), std::vector<double>(config.cams.size()));
  for (std::size_t t = 0; t < config.tap_sets.size(); ++t) {
    for (std::size_t c = 0; c < config.cams.size(); ++c) {
      r.cells[t][c] = fraction(hits[t][c], scenarios.size());
    }
  }
  return r;
}

void write_localization_csv(std::ostream& out, const std::vector<LocalizationResult>& results) {
  if (results.empty()) throw std::invalid_argument("no localization results");
  const auto& rows = results.front().tap_sets;
  for (const auto& r : results) {
    if (r.tap_sets != rows) throw std::invalid_argument("results disagree on tap sets");
  }
  out << "row";
  for (const auto& r : results) {
    for (CamKind cam : r.cams) out << ',' << to_string(r.pattern) << '/' << to_string(cam);
  }
  out << '\n';
  out.precision(17);
  auto row = [&](const std::string& name, auto value) {
    out << name;
    for (const auto& r : results) {
      for (std::size_t c = 0; c < r.cams.size(); ++c) out << ',' << value(r, c);
    }
    out << '\n';
  };
  row("Original", [](const LocalizationResult& r, std::size_t) { return r.original; });
  for (std::size_t t = 0; t < rows.size(); ++t) {
    row(rows[t], [t](const LocalizationResult& r, std::size_t c) { return r.cells[t][c]; });
  }
  row("Oracle", [](const LocalizationResult& r, std::size_t) { return r.oracle; });
}

std::vector<EvalItem> scenario_items(const Model& model, const ScenarioSet& scenarios) {
  std::vector<EvalItem> items;
  items.reserve(scenarios.size());
  for (const auto& sc : scenarios) items.push_back({model.featurize(sc.spec), sc.target});
  return items;
}

}  // namespace camaudit

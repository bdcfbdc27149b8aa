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

#ifndef CAMAUDIT_MULTISPEAKER_LOCALIZATION_H_
#define CAMAUDIT_MULTISPEAKER_LOCALIZATION_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "camaudit/cams/cams.h"
#include "camaudit/data/datagen.h"
#include "camaudit/eval/curves.h"
#include "camaudit/model/model.h"

namespace camaudit {

struct Recognition {
  std::size_t speaker = 0;
  bool correct = false;
};

// Multiplies the scenario's features by `map` and recognises the result;
// correct iff the prediction is the target speaker.
Recognition localize_and_recognize(const Model& model, const ScenarioEntry& scenario,
                                   const SaliencyMap& map);

inline const std::vector<std::string> kTableTapSets{
    "S1", "S2", "S3", "S4", "S4+S3", "S4+S3+S2", "S4+S3+S2+S1"};

struct LocalizationConfig {
  std::vector<CamKind> cams{CamKind::kGradCamPP, CamKind::kScoreCam, CamKind::kLayerCam};
  std::vector<std::string> tap_sets = kTableTapSets;
  double gamma = kDefaultGamma;
  // Replace every saliency map by all ones.
  bool identity_maps = false;
};

struct LocalizationResult {
  Pattern pattern = Pattern::kAB;
  std::size_t num_scenarios = 0;
  std::vector<CamKind> cams;
  std::vector<std::string> tap_sets;
  double original = 0.0;  // unmasked input
  double oracle = 0.0;    // ground-truth target-frame mask
  std::vector<std::vector<double>> cells;  // [tap set][cam], top-1 accuracy

  double cell(const std::string& tap_set, CamKind cam) const;
  // Best accuracy of `cam` over all tap sets.
  double best(CamKind cam) const;
};

// Saliency is taken w.r.t. each scenario's target speaker.
LocalizationResult scenario_eval(const Model& model, const ScenarioSet& scenarios,
                                 const LocalizationConfig& config = {});

// Rows Original, tap sets, Oracle; columns "<pattern>/<cam>" for every
// result and cam.
void write_localization_csv(std::ostream& out, const std::vector<LocalizationResult>& results);

// Featurised scenarios labelled with their target, for deletion/insertion.
std::vector<EvalItem> scenario_items(const Model& model, const ScenarioSet& scenarios);

}  // namespace camaudit

#endif  // CAMAUDIT_MULTISPEAKER_LOCALIZATION_H_

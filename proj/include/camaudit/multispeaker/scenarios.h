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

#ifndef CAMAUDIT_MULTISPEAKER_SCENARIOS_H_
#define CAMAUDIT_MULTISPEAKER_SCENARIOS_H_

#include <cstddef>
#include <cstdint>

#include "camaudit/cams/saliency_map.h"
#include "camaudit/data/datagen.h"

namespace camaudit {

struct ScenarioConfig {
  std::size_t per_speaker = 20;  // scenarios per target speaker
  std::size_t min_segment_frames = 40;
  std::size_t max_segment_frames = 60;
  double noise_level = kDefaultNoiseLevel;
  std::uint64_t seed = 4242;
};

// Every speaker of the bank is a target `per_speaker` times. Interferers
// are drawn uniformly from the other speakers; segments are silence-free
// fresh utterances with uniform lengths. Spectrograms hold raw energies.
ScenarioSet build_scenarios(const SpeakerBank& bank, Pattern pattern, const ScenarioConfig& config);

// 1 on the target speaker's frames, 0 elsewhere, over the whole grid.
SaliencyMap oracle_map(const ScenarioEntry& entry);

}  // namespace camaudit

#endif  // CAMAUDIT_MULTISPEAKER_SCENARIOS_H_

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

#include "camaudit/multispeaker/scenarios.h"

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace camaudit {

ScenarioSet build_scenarios(const SpeakerBank& bank, Pattern pattern, const ScenarioConfig& config) {
  const std::string letters = pattern_letters(pattern);
  const std::size_t distinct = letters.find('C') != std::string::npos ? 3 : 2;
  if (bank.size() < distinct) {
    throw std::invalid_argument("pattern " + to_string(pattern) + " needs " +
                                std::to_string(distinct) + " speakers");
  }
  if (config.min_segment_frames == 0 || config.min_segment_frames > config.max_segment_frames) {
    throw std::invalid_argument("bad scenario segment length range");
  }

  std::mt19937_64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(pattern)));
  std::uniform_int_distribution<std::size_t> length(config.min_segment_frames,
                                                    config.max_segment_frames);
  std::uniform_int_distribution<std::size_t> other(0, bank.size() - 2);
  std::uniform_int_distribution<std::size_t> any(0, bank.size() - 1);
  ScenarioSet set;
  set.reserve(bank.size() * config.per_speaker);
  for (std::size_t a = 0; a < bank.size(); ++a) {
    for (std::size_t j = 0; j < config.per_speaker; ++j) {
      std::size_t b = other(rng);
      if (b >= a) ++b;
      std::size_t c = b;
      while (distinct == 3 && (c == a || c == b)) c = any(rng);
      std::vector<std::pair<Spectrogram, std::size_t>> parts;
      for (char letter : letters) {
        const std::size_t spk = letter == 'A' ? a : letter == 'B' ? b : c;
        const std::size_t frames = length(rng);
        parts.emplace_back(synth_utterance(bank, spk, frames, {}, config.noise_level, rng()), spk);
      }
      set.push_back(concat_scenario(parts, pattern));
    }
  }
  return set;
}

SaliencyMap oracle_map(const ScenarioEntry& entry) {
  SaliencyMap map(entry.spec.freq_bins, entry.spec.frames);
  map.tap = "oracle";
  map.state = NormState::kScaled;
  for (std::size_t t = 0; t < entry.spec.frames; ++t) {
    if (entry.frame_speaker[t] != entry.target) continue;
    for (std::size_t f = 0; f < entry.spec.freq_bins; ++f) map.at(f, t) = 1.0;
  }
  return map;
}

}  // namespace camaudit

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

#ifndef CAMAUDIT_DATA_VAD_H_
#define CAMAUDIT_DATA_VAD_H_

#include <cstdint>
#include <vector>

#include "camaudit/data/spectrogram.h"

namespace camaudit {

inline constexpr double kDefaultVadThreshold = 0.2;

// Energy VAD: frame t is speech iff its total energy exceeds
// relative_threshold * (95th-percentile frame energy, nearest rank).
std::vector<std::uint8_t> vad_mask(const Spectrogram& spec,
                                   double relative_threshold = kDefaultVadThreshold);

// Drops the non-speech frames found by vad_mask.
Spectrogram vad_trim(const Spectrogram& spec, double relative_threshold = kDefaultVadThreshold);

}  // namespace camaudit

#endif  // CAMAUDIT_DATA_VAD_H_

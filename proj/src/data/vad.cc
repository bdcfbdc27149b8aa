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

#include "camaudit/data/vad.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camaudit {

std::vector<std::uint8_t> vad_mask(const Spectrogram& spec, double relative_threshold) {
  if (!(relative_threshold > 0.0 && relative_threshold < 1.0)) {
    throw std::invalid_argument("VAD threshold must lie in (0, 1)");
  }
  std::vector<std::uint8_t> mask(spec.frames, 0);
  if (spec.frames == 0) return mask;
  std::vector<double> energy(spec.frames);
  for (std::size_t t = 0; t < spec.frames; ++t) energy[t] = spec.frame_energy(t);
  std::vector<double> sorted = energy;
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(spec.frames)));
  const std::size_t idx = rank == 0 ? 0 : rank - 1;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end());
  const double cut = relative_threshold * sorted[idx];
  for (std::size_t t = 0; t < spec.frames; ++t) mask[t] = energy[t] > cut ? 1 : 0;
  return mask;
}

Spectrogram vad_trim(const Spectrogram& spec, double relative_threshold) {
  return select_frames(spec, vad_mask(spec, relative_threshold));
}

}  // namespace camaudit

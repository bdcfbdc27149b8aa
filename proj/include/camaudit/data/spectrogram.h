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

#ifndef CAMAUDIT_DATA_SPECTROGRAM_H_
#define CAMAUDIT_DATA_SPECTROGRAM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "camaudit/nn/tensor.h"

namespace camaudit {

// freq_bins x frames grid, row-major (frequency rows, time columns).
// `speech` holds one ground-truth flag per frame, or is empty when unknown.
struct Spectrogram {
  std::size_t freq_bins = 0;
  std::size_t frames = 0;
  std::vector<double> values;
  std::vector<std::uint8_t> speech;

  Spectrogram() = default;
  Spectrogram(std::size_t freq_bins, std::size_t frames, double fill = 0.0);

  double& at(std::size_t f, std::size_t t) { return values[f * frames + t]; }
  double at(std::size_t f, std::size_t t) const { return values[f * frames + t]; }
  std::size_t size() const { return values.size(); }
  double frame_energy(std::size_t t) const;

  friend bool operator==(const Spectrogram&, const Spectrogram&) = default;
};

// H = freq_bins, W = frames, C = 1; the memory layout is unchanged.
nn::Tensor to_tensor(const Spectrogram& spec);

// Keeps the frames whose flag is set, in order.
Spectrogram select_frames(const Spectrogram& spec, const std::vector<std::uint8_t>& keep);

// Binary layout, little-endian: u32 freq_bins, u32 frames, then
// freq_bins * frames f64 values (row-major), then one u8 speech flag per frame.
void write_spectrogram(std::ostream& out, const Spectrogram& spec);
Spectrogram read_spectrogram(std::istream& in);
void save_spectrogram(const std::filesystem::path& path, const Spectrogram& spec);
Spectrogram load_spectrogram(const std::filesystem::path& path);

}  // namespace camaudit

#endif  // CAMAUDIT_DATA_SPECTROGRAM_H_

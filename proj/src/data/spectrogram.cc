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

#include "camaudit/data/spectrogram.h"

#include <fstream>
#include <stdexcept>
#include <string>

#include "camaudit/data/binary_io.h"

namespace camaudit {

Spectrogram::Spectrogram(std::size_t freq_bins_, std::size_t frames_, double fill)
    : freq_bins(freq_bins_), frames(frames_), values(freq_bins_ * frames_, fill) {}

double Spectrogram::frame_energy(std::size_t t) const {
  double e = 0.0;
  for (std::size_t f = 0; f < freq_bins; ++f) e += at(f, t);
  return e;
}

nn::Tensor to_tensor(const Spectrogram& spec) {
  if (spec.freq_bins == 0 || spec.frames == 0) {
    throw std::invalid_argument("spectrogram has an empty axis");
  }
  return nn::Tensor({spec.freq_bins, spec.frames, 1}, spec.values);
}

Spectrogram select_frames(const Spectrogram& spec, const std::vector<std::uint8_t>& keep) {
  if (keep.size() != spec.frames) {
    throw std::invalid_argument("frame mask has " + std::to_string(keep.size()) +
                                " entries, spectrogram has " + std::to_string(spec.frames));
  }
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < spec.frames; ++t) {
    if (keep[t]) kept.push_back(t);
  }
  Spectrogram out(spec.freq_bins, kept.size());
  for (std::size_t f = 0; f < spec.freq_bins; ++f) {
    for (std::size_t i = 0; i < kept.size(); ++i) out.at(f, i) = spec.at(f, kept[i]);
  }
  if (!spec.speech.empty()) {
    for (std::size_t t : kept) out.speech.push_back(spec.speech[t]);
  }
  return out;
}

void write_spectrogram(std::ostream& out, const Spectrogram& spec) {
  std::vector<std::uint8_t> buf;
  buf.reserve(8 + spec.values.size() * 8 + spec.frames);
  binio::put_u32(buf, static_cast<std::uint32_t>(spec.freq_bins));
  binio::put_u32(buf, static_cast<std::uint32_t>(spec.frames));
  for (double v : spec.values) binio::put_f64(buf, v);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    buf.push_back(spec.speech.empty() ? 0 : (spec.speech[t] ? 1 : 0));
  }
  binio::write_all(out, buf);
}

Spectrogram read_spectrogram(std::istream& in) {
  const auto buf = binio::read_all(in);
  binio::Reader r(buf.data(), buf.size());
  const std::size_t freq_bins = r.u32();
  const std::size_t frames = r.u32();
  if (r.remaining() != freq_bins * frames * 8 + frames) {
    throw std::runtime_error("spectrogram payload size does not match header " +
                             std::to_string(freq_bins) + "x" + std::to_string(frames));
  }
  Spectrogram spec(freq_bins, frames);
  for (double& v : spec.values) v = r.f64();
  spec.speech.resize(frames);
  for (auto& s : spec.speech) s = r.u8() ? 1 : 0;
  return spec;
}

void save_spectrogram(const std::filesystem::path& path, const Spectrogram& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_spectrogram(out, spec);
}

Spectrogram load_spectrogram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_spectrogram(in);
}

}  // namespace camaudit

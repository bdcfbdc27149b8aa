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

#include "camaudit/data/datagen.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace camaudit {
namespace {

using Rng = std::mt19937_64;

std::size_t choose3(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// Centers live in [half_support, freq_bins - 1 - half_support] so every band
// fits inside the grid.
std::size_t center_positions(std::size_t freq_bins) {
  return freq_bins > 2 * kBandHalfSupport ? freq_bins - 2 * kBandHalfSupport : 0;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t speaker_capacity(std::size_t freq_bins) {
  const std::size_t p = center_positions(freq_bins);
  const std::size_t slack = (kBandsPerSpeaker - 1) * (kMinCenterSpacing - 1);
  return p > slack ? choose3(p - slack) : 0;
}

SpeakerBank synth_speaker_bank(std::size_t num_speakers, std::size_t freq_bins,
                               std::uint64_t seed) {
  if (num_speakers < 2) throw std::invalid_argument("a speaker bank needs at least 2 speakers");
  const std::size_t capacity = speaker_capacity(freq_bins);
  if (num_speakers > capacity) {
    throw std::invalid_argument(std::to_string(num_speakers) + " speakers exceed the " +
                                std::to_string(capacity) + " distinct band layouts available at " +
                                std::to_string(freq_bins) + " frequency bins");
  }
  // Enumerate every admissible center triple, then take a seeded sample.
  const std::size_t lo = kBandHalfSupport, hi = freq_bins - 1 - kBandHalfSupport;
  std::vector<std::array<std::size_t, 3>> layouts;
  for (std::size_t a = lo; a <= hi; ++a) {
    for (std::size_t b = a + kMinCenterSpacing; b <= hi; ++b) {
      for (std::size_t c = b + kMinCenterSpacing; c <= hi; ++c) layouts.push_back({a, b, c});
    }
  }
  Rng rng(seed);
  std::shuffle(layouts.begin(), layouts.end(), rng);

  std::uniform_real_distribution<double> width(0.7, 1.4), amplitude(0.6, 1.0), rate(1.0, 3.0);
  SpeakerBank bank;
  bank.freq_bins = freq_bins;
  bank.seed = seed;
  for (std::size_t s = 0; s < num_speakers; ++s) {
    SpeakerProfile p;
    p.centers.assign(layouts[s].begin(), layouts[s].end());
    for (std::size_t b = 0; b < kBandsPerSpeaker; ++b) {
      p.widths.push_back(width(rng));
      p.amplitudes.push_back(amplitude(rng));
      p.rates.push_back(rate(rng));
    }
    bank.speakers.push_back(std::move(p));
  }
  return bank;
}

Spectrogram synth_utterance(const SpeakerBank& bank, std::size_t speaker, std::size_t frames,
                            std::span<const Span> silence, double noise_level,
                            std::uint64_t seed) {
  if (speaker >= bank.size()) {
    throw std::out_of_range("speaker " + std::to_string(speaker) + " not in bank of " +
                            std::to_string(bank.size()));
  }
  if (frames == 0) throw std::invalid_argument("utterance needs at least one frame");
  if (noise_level < 0.0) throw std::invalid_argument("noise level must be non-negative");
  std::vector<Span> spans(silence.begin(), silence.end());
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].begin >= spans[i].end || spans[i].end > frames) {
      throw std::invalid_argument("silence span [" + std::to_string(spans[i].begin) + ", " +
                                  std::to_string(spans[i].end) + ") outside [0, " +
                                  std::to_string(frames) + ")");
    }
    if (i > 0 && spans[i].begin < spans[i - 1].end) {
      throw std::invalid_argument("silence spans overlap");
    }
  }

  const SpeakerProfile& p = bank.speakers[speaker];
  const std::size_t bins = bank.freq_bins;
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> phase(kBandsPerSpeaker), gain(kBandsPerSpeaker);
  for (std::size_t b = 0; b < kBandsPerSpeaker; ++b) {
    phase[b] = 2.0 * std::numbers::pi * unit(rng);
    gain[b] = 0.9 + 0.2 * unit(rng);
  }

  Spectrogram spec(bins, frames);
  spec.speech.assign(frames, 1);
  for (const Span& s : spans) {
    for (std::size_t t = s.begin; t < s.end; ++t) spec.speech[t] = 0;
  }
  for (std::size_t t = 0; t < frames; ++t) {
    if (!spec.speech[t]) {
      for (std::size_t f = 0; f < bins; ++f) spec.at(f, t) = kSilenceLevel * unit(rng);
      continue;
    }
    for (std::size_t b = 0; b < kBandsPerSpeaker; ++b) {
      const double mod =
          1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * p.rates[b] * static_cast<double>(t) / 100.0 +
                               phase[b]);
      const double a = p.amplitudes[b] * gain[b] * mod;
      const double inv_var = 1.0 / (p.widths[b] * p.widths[b]);
      for (std::size_t d = 0; d <= 2 * kBandHalfSupport; ++d) {
        const std::size_t f = p.centers[b] + d - kBandHalfSupport;
        const double off = static_cast<double>(d) - static_cast<double>(kBandHalfSupport);
        spec.at(f, t) += a * std::exp(-0.5 * off * off * inv_var);
      }
    }
    if (noise_level > 0.0) {
      for (std::size_t f = 0; f < bins; ++f) spec.at(f, t) += noise_level * unit(rng);
    }
  }
  return spec;
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::kAB: return "A-B";
    case Pattern::kABA: return "A-B-A";
    case Pattern::kBAB: return "B-A-B";
    case Pattern::kABC: return "A-B-C";
  }
  return "?";
}

Pattern parse_pattern(const std::string& tag) {
  for (Pattern p : {Pattern::kAB, Pattern::kABA, Pattern::kBAB, Pattern::kABC}) {
    if (tag == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown scenario pattern '" + tag + "'");
}

std::string pattern_letters(Pattern p) {
  std::string s = to_string(p);
  s.erase(std::remove(s.begin(), s.end(), '-'), s.end());
  return s;
}

ScenarioEntry concat_scenario(const std::vector<std::pair<Spectrogram, std::size_t>>& utterances,
                              Pattern pattern) {
  const std::string letters = pattern_letters(pattern);
  if (utterances.size() != letters.size()) {
    throw std::invalid_argument("pattern " + to_string(pattern) + " needs " +
                                std::to_string(letters.size()) + " utterances, got " +
                                std::to_string(utterances.size()));
  }
  // Equal letters must share a speaker and distinct letters must not.
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      const bool same_letter = letters[i] == letters[j];
      const bool same_speaker = utterances[i].second == utterances[j].second;
      if (same_letter != same_speaker) {
        throw std::invalid_argument("speakers do not follow pattern " + to_string(pattern));
      }
    }
  }
  const std::size_t bins = utterances.front().first.freq_bins;
  std::size_t total = 0;
  for (const auto& [spec, spk] : utterances) {
    if (spec.freq_bins != bins) {
      throw std::invalid_argument("frequency-bin mismatch between concatenated utterances");
    }
    total += spec.frames;
  }

  ScenarioEntry e;
  e.pattern = pattern;
  e.spec = Spectrogram(bins, total);
  e.spec.speech.reserve(total);
  e.frame_speaker.reserve(total);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    const auto& [spec, spk] = utterances[i];
    for (std::size_t f = 0; f < bins; ++f) {
      for (std::size_t t = 0; t < spec.frames; ++t) e.spec.at(f, offset + t) = spec.at(f, t);
    }
    for (std::size_t t = 0; t < spec.frames; ++t) {
      e.spec.speech.push_back(spec.speech.empty() ? 1 : spec.speech[t]);
      e.frame_speaker.push_back(spk);
    }
    e.segments.push_back({offset, offset + spec.frames, spk});
    if (letters[i] == 'A') e.target = spk;
    offset += spec.frames;
  }
  return e;
}

}  // namespace camaudit

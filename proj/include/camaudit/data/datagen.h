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

#ifndef CAMAUDIT_DATA_DATAGEN_H_
#define CAMAUDIT_DATA_DATAGEN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "camaudit/data/spectrogram.h"

namespace camaudit {

// Generative parameters of one synthetic speaker: a few formant-like bands.
struct SpeakerProfile {
  std::vector<std::size_t> centers;  // ascending frequency-bin indices
  std::vector<double> widths;        // Gaussian sigma, in bins
  std::vector<double> amplitudes;
  std::vector<double> rates;         // modulation cycles per 100 frames

  friend bool operator==(const SpeakerProfile&, const SpeakerProfile&) = default;
};

struct SpeakerBank {
  std::size_t freq_bins = 0;
  std::uint64_t seed = 0;
  std::vector<SpeakerProfile> speakers;

  std::size_t size() const { return speakers.size(); }
  friend bool operator==(const SpeakerBank&, const SpeakerBank&) = default;
};

inline constexpr std::size_t kBandsPerSpeaker = 3;
// Gaussian bands are truncated to +/- this many bins around the center.
inline constexpr std::size_t kBandHalfSupport = 2;
inline constexpr std::size_t kMinCenterSpacing = 4;
// Per-bin energy bound in silence frames.
inline constexpr double kSilenceLevel = 1e-4;
inline constexpr double kDefaultNoiseLevel = 0.1;

// Number of distinct band-center sets available at `freq_bins`.
std::size_t speaker_capacity(std::size_t freq_bins);

// Pairwise-distinct speakers, deterministic in (num_speakers, freq_bins, seed).
SpeakerBank synth_speaker_bank(std::size_t num_speakers, std::size_t freq_bins,
                               std::uint64_t seed);

// Half-open frame range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

// Raw energies for one utterance. Speech frames carry the speaker's slowly
// modulated bands plus uniform noise in [0, noise_level); silence frames
// carry at most kSilenceLevel per bin.
Spectrogram synth_utterance(const SpeakerBank& bank, std::size_t speaker, std::size_t frames,
                            std::span<const Span> silence, double noise_level,
                            std::uint64_t seed);

enum class Pattern { kAB, kABA, kBAB, kABC };

std::string to_string(Pattern p);
Pattern parse_pattern(const std::string& tag);
// Letters of the pattern, e.g. "BAB".
std::string pattern_letters(Pattern p);

struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t speaker = 0;
};

struct ScenarioEntry {
  Spectrogram spec;
  Pattern pattern = Pattern::kAB;
  std::vector<std::size_t> frame_speaker;
  std::vector<Segment> segments;
  std::size_t target = 0;
};

using ScenarioSet = std::vector<ScenarioEntry>;

// Concatenates utterances along time. Speakers must follow the pattern's
// letters: equal letters share a speaker, distinct letters differ. The
// target is speaker A.
ScenarioEntry concat_scenario(const std::vector<std::pair<Spectrogram, std::size_t>>& utterances,
                              Pattern pattern);

// Deterministic 64-bit seed mixing (splitmix64 finaliser).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace camaudit

#endif  // CAMAUDIT_DATA_DATAGEN_H_

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

#ifndef CAMAUDIT_DATA_MANIFEST_H_
#define CAMAUDIT_DATA_MANIFEST_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "camaudit/data/datagen.h"
#include "camaudit/data/spectrogram.h"

namespace camaudit {

struct CorpusConfig {
  std::size_t num_speakers = 32;
  std::size_t utts_per_speaker = 30;
  std::size_t freq_bins = 40;
  std::size_t frames = 100;
  std::size_t silence_spans = 2;
  std::size_t silence_frames = 10;
  double noise_level = kDefaultNoiseLevel;
  std::uint64_t seed = 20220;
};

struct ManifestRecord {
  std::string path;  // relative to the manifest's directory
  std::size_t speaker = 0;
  std::size_t frames = 0;
  std::vector<Span> silence;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

// Plain-text utterance index. Header lines are "# key=value"; each record is
// "path<TAB>speaker<TAB>frames<TAB>silence" where silence is "b-e,b-e" or "-".
struct DatasetManifest {
  static constexpr int kVersion = 1;

  std::uint64_t seed = 0;
  std::size_t num_speakers = 0;
  std::size_t freq_bins = 0;
  double noise_level = 0.0;
  std::vector<ManifestRecord> records;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

void write_manifest(std::ostream& out, const DatasetManifest& manifest);
DatasetManifest read_manifest(std::istream& in);
DatasetManifest load_manifest(const std::filesystem::path& path);

struct Utterance {
  Spectrogram spec;
  std::size_t speaker = 0;
  std::size_t index = 0;  // position among this speaker's utterances
};

struct Corpus {
  SpeakerBank bank;
  DatasetManifest manifest;
  std::vector<Utterance> utterances;
};

// Deterministic default corpus: silence spans are placed at random,
// non-overlapping positions.
Corpus generate_corpus(const CorpusConfig& config);

// Writes <dir>/manifest.txt and one spectrogram file per utterance.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Reads a manifest and every spectrogram it lists; the speaker bank is
// regenerated from the header.
Corpus load_corpus(const std::filesystem::path& manifest_path);

// The last `heldout_per_speaker` utterances of each speaker are held out.
bool is_heldout(const Utterance& u, std::size_t utts_of_speaker, std::size_t heldout_per_speaker);

}  // namespace camaudit

#endif  // CAMAUDIT_DATA_MANIFEST_H_

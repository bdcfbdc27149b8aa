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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "camaudit/data/datagen.h"
#include "camaudit/data/manifest.h"
#include "camaudit/data/spectrogram.h"
#include "camaudit/data/vad.h"

namespace camaudit {
namespace {

namespace fs = std::filesystem;

TEST(SpeakerBank, SeededAndPairwiseDistinct) {
  const auto a = synth_speaker_bank(32, 40, 11);
  EXPECT_EQ(a, synth_speaker_bank(32, 40, 11));
  std::set<std::vector<std::size_t>> centers;
  for (const auto& s : a.speakers) {
    centers.insert(s.centers);
    ASSERT_EQ(s.centers.size(), kBandsPerSpeaker);
    for (std::size_t b = 1; b < s.centers.size(); ++b) {
      EXPECT_GE(s.centers[b] - s.centers[b - 1], kMinCenterSpacing);
    }
    EXPECT_GE(s.centers.front(), kBandHalfSupport);
    EXPECT_LE(s.centers.back() + kBandHalfSupport, 39u);
  }
  EXPECT_EQ(centers.size(), 32u);
  const auto two = synth_speaker_bank(2, 40, 3);
  EXPECT_NE(two.speakers[0].centers, two.speakers[1].centers);
}

TEST(SpeakerBank, RejectsTooFewOrTooMany) {
  EXPECT_THROW(synth_speaker_bank(1, 40, 0), std::invalid_argument);
  // 13 bins: centers in [2, 10] admit only (2, 6, 10); 12 bins admit none.
  EXPECT_EQ(speaker_capacity(13), 1u);
  EXPECT_EQ(speaker_capacity(12), 0u);
  EXPECT_THROW(synth_speaker_bank(2, 13, 0), std::invalid_argument);
}

TEST(SynthUtterance, SilenceAndNoiseFollowConstruction) {
  const auto bank = synth_speaker_bank(4, 40, 5);
  const std::vector<Span> spans{{0, 10}, {30, 40}};
  const auto clean = synth_utterance(bank, 1, 40, spans, 0.0, 9);
  std::set<std::size_t> band_bins;
  for (std::size_t c : bank.speakers[1].centers) {
    for (std::size_t f = c - kBandHalfSupport; f <= c + kBandHalfSupport; ++f) band_bins.insert(f);
  }
  for (std::size_t t = 0; t < 40; ++t) {
    const bool speech = t >= 10 && t < 30;
    EXPECT_EQ(clean.speech[t], speech ? 1 : 0);
    for (std::size_t f = 0; f < 40; ++f) {
      if (!speech) {
        EXPECT_LT(clean.at(f, t), kSilenceLevel);
      } else if (!band_bins.count(f)) {
        EXPECT_EQ(clean.at(f, t), 0.0);
      } else {
        EXPECT_GT(clean.at(f, t), 0.0);
      }
    }
  }
  EXPECT_EQ(clean, synth_utterance(bank, 1, 40, spans, 0.0, 9));
}

TEST(SynthUtterance, AllSilentAndOverlapCases) {
  const auto bank = synth_speaker_bank(2, 40, 5);
  const std::vector<Span> all{{0, 20}};
  const auto s = synth_utterance(bank, 0, 20, all, 0.1, 1);
  for (auto flag : s.speech) EXPECT_EQ(flag, 0);
  const std::vector<Span> overlap{{0, 10}, {5, 12}};
  EXPECT_THROW(synth_utterance(bank, 0, 20, overlap, 0.1, 1), std::invalid_argument);
  const std::vector<Span> outside{{15, 25}};
  EXPECT_THROW(synth_utterance(bank, 0, 20, outside, 0.1, 1), std::invalid_argument);
}

TEST(Vad, TrivialCases) {
  EXPECT_EQ(vad_mask(Spectrogram(4, 6, 0.0)), std::vector<std::uint8_t>(6, 0));
  EXPECT_EQ(vad_mask(Spectrogram(4, 6, 2.0), 0.5), std::vector<std::uint8_t>(6, 1));
  EXPECT_THROW(vad_mask(Spectrogram(4, 6, 2.0), 1.0), std::invalid_argument);
}

TEST(Vad, RecoversGeneratedSpeechFlagsOnDefaultCorpus) {
  const Corpus corpus = generate_corpus(CorpusConfig{});
  for (const auto& u : corpus.utterances) {
    ASSERT_EQ(vad_mask(u.spec), u.spec.speech) << "speaker " << u.speaker << " utt " << u.index;
  }
  const auto& first = corpus.utterances.front().spec;
  EXPECT_EQ(vad_trim(first).frames, 80u);
}

TEST(Spectrogram, BinaryRoundTripAndTruncation) {
  Spectrogram s(3, 4);
  for (std::size_t i = 0; i < s.size(); ++i) s.values[i] = 0.25 * static_cast<double>(i) - 1.0;
  s.speech = {1, 0, 1, 1};
  std::stringstream io;
  write_spectrogram(io, s);
  const std::string bytes = io.str();
  EXPECT_EQ(bytes.size(), 8u + 12u * 8u + 4u);
  std::istringstream in(bytes);
  EXPECT_EQ(read_spectrogram(in), s);
  std::istringstream cut(bytes.substr(0, bytes.size() - 1));
  EXPECT_THROW(read_spectrogram(cut), std::runtime_error);
}

TEST(Manifest, TextRoundTrip) {
  DatasetManifest m;
  m.seed = 42;
  m.num_speakers = 2;
  m.freq_bins = 40;
  m.noise_level = 0.1;
  m.records = {{"utts/a.spg", 0, 100, {{3, 13}, {50, 60}}}, {"utts/b.spg", 1, 80, {}}};
  std::stringstream io;
  write_manifest(io, m);
  EXPECT_EQ(read_manifest(io), m);
  std::istringstream bad("# version=9\n");
  EXPECT_THROW(read_manifest(bad), std::runtime_error);
}

TEST(Corpus, DefaultShapeAndByteIdenticalManifest) {
  const Corpus corpus = generate_corpus(CorpusConfig{});
  EXPECT_EQ(corpus.utterances.size(), 32u * 30u);
  EXPECT_EQ(corpus.manifest.records.size(), 960u);
  const fs::path dir = fs::temp_directory_path() / "camaudit_corpus_test";
  fs::remove_all(dir);
  write_corpus(corpus, dir / "a");
  write_corpus(generate_corpus(CorpusConfig{}), dir / "b");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(dir / "a/manifest.txt"), slurp(dir / "b/manifest.txt"));
  const Corpus back = load_corpus(dir / "a/manifest.txt");
  EXPECT_EQ(back.bank, corpus.bank);
  ASSERT_EQ(back.utterances.size(), corpus.utterances.size());
  EXPECT_EQ(back.utterances[17].spec, corpus.utterances[17].spec);
  fs::remove_all(dir);
}

TEST(Scenario, ConcatenationLabelsAndReconstruction) {
  const auto bank = synth_speaker_bank(3, 40, 2);
  const auto a = synth_utterance(bank, 0, 100, {}, 0.1, 1);
  const auto b = synth_utterance(bank, 1, 80, {}, 0.1, 2);
  const auto e = concat_scenario({{a, 0}, {b, 1}}, Pattern::kAB);
  EXPECT_EQ(e.spec.frames, 180u);
  EXPECT_EQ(e.target, 0u);
  for (std::size_t t = 0; t < 180; ++t) EXPECT_EQ(e.frame_speaker[t], t < 100 ? 0u : 1u);
  for (const auto& seg : e.segments) {
    const auto& src = seg.speaker == 0 ? a : b;
    for (std::size_t f = 0; f < 40; ++f) {
      for (std::size_t t = seg.begin; t < seg.end; ++t) {
        ASSERT_EQ(e.spec.at(f, t), src.at(f, t - seg.begin));
      }
    }
  }

  const auto bab = concat_scenario({{b, 1}, {a, 0}, {b, 1}}, Pattern::kBAB);
  ASSERT_EQ(bab.segments.size(), 3u);
  EXPECT_EQ(bab.segments[1].speaker, bab.target);
  const auto c = synth_utterance(bank, 2, 10, {}, 0.1, 3);
  const auto abc = concat_scenario({{a, 0}, {b, 1}, {c, 2}}, Pattern::kABC);
  EXPECT_EQ(std::set<std::size_t>(abc.frame_speaker.begin(), abc.frame_speaker.end()).size(), 3u);

  EXPECT_THROW(concat_scenario({{a, 0}, {b, 0}}, Pattern::kAB), std::invalid_argument);
  EXPECT_THROW(concat_scenario({{a, 0}}, Pattern::kAB), std::invalid_argument);
  EXPECT_THROW(concat_scenario({{a, 0}, {Spectrogram(30, 5), 1}}, Pattern::kAB),
               std::invalid_argument);
}

TEST(Scenario, PatternNames) {
  for (Pattern p : {Pattern::kAB, Pattern::kABA, Pattern::kBAB, Pattern::kABC}) {
    EXPECT_EQ(parse_pattern(to_string(p)), p);
  }
  EXPECT_EQ(to_string(Pattern::kBAB), "B-A-B");
  EXPECT_THROW(parse_pattern("A-A"), std::invalid_argument);
}

}  // namespace
}  // namespace camaudit

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

#include "camaudit/data/manifest.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace camaudit {
namespace {

std::string format_spans(const std::vector<Span>& spans) {
  if (spans.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (i) os << ',';
    os << spans[i].begin << '-' << spans[i].end;
  }
  return os.str();
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw std::runtime_error("manifest: bad " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<Span> parse_spans(const std::string& s) {
  std::vector<Span> spans;
  if (s == "-") return spans;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw std::runtime_error("manifest: bad silence span '" + item + "'");
    spans.push_back({parse_count(item.substr(0, dash), "span start"),
                     parse_count(item.substr(dash + 1), "span end")});
  }
  return spans;
}

std::string utterance_path(std::size_t speaker, std::size_t index) {
  std::ostringstream os;
  os << "utts/spk" << std::setw(3) << std::setfill('0') << speaker << "_utt" << std::setw(3)
     << std::setfill('0') << index << ".spg";
  return os.str();
}

}  // namespace

void write_manifest(std::ostream& out, const DatasetManifest& m) {
  out << "# camaudit dataset manifest\n";
  out << "# version=" << DatasetManifest::kVersion << '\n';
  out << "# seed=" << m.seed << '\n';
  out << "# num_speakers=" << m.num_speakers << '\n';
  out << "# freq_bins=" << m.freq_bins << '\n';
  out << "# noise_level=" << std::setprecision(17) << m.noise_level << '\n';
  for (const auto& r : m.records) {
    out << r.path << '\t' << r.speaker << '\t' << r.frames << '\t' << format_spans(r.silence)
        << '\n';
  }
}

DatasetManifest read_manifest(std::istream& in) {
  DatasetManifest m;
  std::map<std::string, std::string> header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        header[key] = line.substr(eq + 1);
      }
      continue;
    }
    std::istringstream is(line);
    std::string path, speaker, frames, spans;
    if (!std::getline(is, path, '\t') || !std::getline(is, speaker, '\t') ||
        !std::getline(is, frames, '\t') || !std::getline(is, spans)) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": expected 4 tab-separated fields");
    }
    m.records.push_back({path, parse_count(speaker, "speaker id"), parse_count(frames, "frame count"),
                         parse_spans(spans)});
  }
  for (const char* key : {"version", "seed", "num_speakers", "freq_bins", "noise_level"}) {
    if (!header.count(key)) throw std::runtime_error(std::string("manifest: missing header ") + key);
  }
  if (parse_count(header["version"], "version") != DatasetManifest::kVersion) {
    throw std::runtime_error("manifest: unsupported version " + header["version"]);
  }
  m.seed = std::stoull(header["seed"]);
  m.num_speakers = parse_count(header["num_speakers"], "num_speakers");
  m.freq_bins = parse_count(header["freq_bins"], "freq_bins");
  m.noise_level = std::stod(header["noise_level"]);
  for (const auto& r : m.records) {
    if (r.speaker >= m.num_speakers) {
      throw std::runtime_error("manifest: speaker " + std::to_string(r.speaker) +
                               " out of range for " + std::to_string(m.num_speakers) + " speakers");
    }
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read manifest " + path.string());
  return read_manifest(in);
}

Corpus generate_corpus(const CorpusConfig& config) {
  if (config.utts_per_speaker == 0) throw std::invalid_argument("need at least one utterance per speaker");
  if (config.silence_spans * config.silence_frames >= config.frames) {
    throw std::invalid_argument("silence spans leave no speech frames");
  }
  Corpus corpus;
  corpus.bank = synth_speaker_bank(config.num_speakers, config.freq_bins, config.seed);
  corpus.manifest.seed = config.seed;
  corpus.manifest.num_speakers = config.num_speakers;
  corpus.manifest.freq_bins = config.freq_bins;
  corpus.manifest.noise_level = config.noise_level;

  for (std::size_t s = 0; s < config.num_speakers; ++s) {
    for (std::size_t u = 0; u < config.utts_per_speaker; ++u) {
      const std::uint64_t seed = mix_seed(mix_seed(config.seed, s), u);
      std::mt19937_64 rng(mix_seed(seed, 0x5113));
      std::uniform_int_distribution<std::size_t> start(0, config.frames - config.silence_frames);
      std::vector<Span> spans;
      while (spans.size() < config.silence_spans) {
        const std::size_t b = start(rng);
        const Span cand{b, b + config.silence_frames};
        bool clash = false;
        for (const Span& o : spans) clash |= cand.begin < o.end && o.begin < cand.end;
        if (!clash) spans.push_back(cand);
      }
      std::sort(spans.begin(), spans.end(),
                [](const Span& a, const Span& b) { return a.begin < b.begin; });
      Utterance utt{synth_utterance(corpus.bank, s, config.frames, spans, config.noise_level, seed),
                    s, u};
      corpus.manifest.records.push_back({utterance_path(s, u), s, config.frames, spans});
      corpus.utterances.push_back(std::move(utt));
    }
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "utts");
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    save_spectrogram(dir / corpus.manifest.records[i].path, corpus.utterances[i].spec);
  }
  std::ofstream out(dir / "manifest.txt");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.txt").string());
  write_manifest(out, corpus.manifest);
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
  Corpus corpus;
  corpus.manifest = load_manifest(manifest_path);
  corpus.bank = synth_speaker_bank(corpus.manifest.num_speakers, corpus.manifest.freq_bins,
                                   corpus.manifest.seed);
  const auto base = manifest_path.parent_path();
  std::vector<std::size_t> seen(corpus.manifest.num_speakers, 0);
  for (const auto& r : corpus.manifest.records) {
    Spectrogram spec = load_spectrogram(base / r.path);
    if (spec.frames != r.frames || spec.freq_bins != corpus.manifest.freq_bins) {
      throw std::runtime_error("spectrogram " + r.path + " does not match its manifest record");
    }
    corpus.utterances.push_back({std::move(spec), r.speaker, seen[r.speaker]++});
  }
  return corpus;
}

bool is_heldout(const Utterance& u, std::size_t utts_of_speaker, std::size_t heldout_per_speaker) {
  return u.index + heldout_per_speaker >= utts_of_speaker;
}

}  // namespace camaudit

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

#include "camaudit/eval/ordering.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace camaudit {

std::string to_string(OrderingSource source) {
  switch (source) {
    case OrderingSource::kCam: return "cam";
    case OrderingSource::kRandom: return "random";
    case OrderingSource::kTimeAligned: return "time-aligned";
  }
  return "unknown";
}

BinOrdering rank_bins(const SaliencyMap& map, std::size_t patch) {
  if (patch == 0) throw std::invalid_argument("patch size must be positive");
  if (map.values.size() != map.height * map.width || map.values.empty()) {
    throw std::invalid_argument("malformed saliency map");
  }
  const std::size_t rows = (map.height + patch - 1) / patch;
  const std::size_t cols = (map.width + patch - 1) / patch;
  std::vector<double> score(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t i = r * patch; i < std::min(map.height, (r + 1) * patch); ++i) {
        for (std::size_t j = c * patch; j < std::min(map.width, (c + 1) * patch); ++j, ++n) {
          sum += map.at(i, j);
        }
      }
      score[r * cols + c] = sum / static_cast<double>(n);
    }
  }
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

  BinOrdering out;
  out.freq_bins = map.height;
  out.frames = map.width;
  out.source = OrderingSource::kCam;
  out.bins.reserve(map.values.size());
  for (std::size_t block : order) {
    const std::size_t r = block / cols, c = block % cols;
    for (std::size_t i = r * patch; i < std::min(map.height, (r + 1) * patch); ++i) {
      for (std::size_t j = c * patch; j < std::min(map.width, (c + 1) * patch); ++j) {
        out.bins.push_back({i, j});
      }
    }
  }
  return out;
}

BinOrdering baseline_ordering(OrderingSource kind, std::size_t freq_bins, std::size_t frames,
                              std::uint64_t seed) {
  if (freq_bins == 0 || frames == 0) throw std::invalid_argument("empty grid");
  BinOrdering out;
  out.source = kind;
  out.freq_bins = freq_bins;
  out.frames = frames;
  out.bins.reserve(freq_bins * frames);
  switch (kind) {
    case OrderingSource::kTimeAligned:
      for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t f = 0; f < freq_bins; ++f) out.bins.push_back({f, t});
      }
      break;
    case OrderingSource::kRandom: {
      for (std::size_t f = 0; f < freq_bins; ++f) {
        for (std::size_t t = 0; t < frames; ++t) out.bins.push_back({f, t});
      }
      std::mt19937_64 rng(seed);
      std::shuffle(out.bins.begin(), out.bins.end(), rng);
      break;
    }
    case OrderingSource::kCam:
      throw std::invalid_argument("cam orderings come from rank_bins");
  }
  return out;
}

BinOrdering reversed(const BinOrdering& ordering) {
  BinOrdering out = ordering;
  std::reverse(out.bins.begin(), out.bins.end());
  return out;
}

bool is_permutation(const BinOrdering& ordering) {
  const std::size_t n = ordering.freq_bins * ordering.frames;
  if (n == 0 || ordering.bins.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const Bin& b : ordering.bins) {
    if (b.freq >= ordering.freq_bins || b.frame >= ordering.frames) return false;
    const std::size_t idx = b.freq * ordering.frames + b.frame;
    if (seen[idx]) return false;
    seen[idx] = true;
  }
  return true;
}

}  // namespace camaudit

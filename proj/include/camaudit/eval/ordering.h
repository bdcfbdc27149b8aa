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

#ifndef CAMAUDIT_EVAL_ORDERING_H_
#define CAMAUDIT_EVAL_ORDERING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "camaudit/cams/saliency_map.h"

namespace camaudit {

struct Bin {
  std::size_t freq = 0;
  std::size_t frame = 0;
  friend bool operator==(const Bin&, const Bin&) = default;
};

enum class OrderingSource { kCam, kRandom, kTimeAligned };
std::string to_string(OrderingSource source);

// Every time-frequency bin of a freq_bins x frames grid, most important first.
struct BinOrdering {
  std::vector<Bin> bins;
  OrderingSource source = OrderingSource::kCam;
  std::size_t freq_bins = 0;
  std::size_t frames = 0;
};

// Bins by descending saliency, ties by row-major index. With patch > 1 the
// grid is tiled into patch x patch blocks (clipped at the edges) ranked by
// mean saliency, ties by block index; bins inside a block stay row-major.
BinOrdering rank_bins(const SaliencyMap& map, std::size_t patch = 1);

// kRandom: seeded uniform permutation. kTimeAligned: frame by frame, low
// frequency first.
BinOrdering baseline_ordering(OrderingSource kind, std::size_t freq_bins, std::size_t frames,
                              std::uint64_t seed = 0);

BinOrdering reversed(const BinOrdering& ordering);

bool is_permutation(const BinOrdering& ordering);

}  // namespace camaudit

#endif  // CAMAUDIT_EVAL_ORDERING_H_

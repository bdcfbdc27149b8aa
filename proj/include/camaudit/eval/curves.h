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

#ifndef CAMAUDIT_EVAL_CURVES_H_
#define CAMAUDIT_EVAL_CURVES_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "camaudit/data/spectrogram.h"
#include "camaudit/eval/ordering.h"
#include "camaudit/model/model.h"

namespace camaudit {

enum class Direction { kDeletion, kInsertion };
std::string to_string(Direction d);

struct Curve {
  std::vector<double> xs;  // masked (deletion) or revealed (insertion) fraction
  std::vector<double> ys;  // top-1 accuracy
  Direction direction = Direction::kDeletion;
};

struct EvalItem {
  Spectrogram features;
  std::size_t label = 0;
};

// Value of a masked bin in feature space.
inline constexpr double kMaskValue = 0.0;

// Point i of `steps` zeroes the first floor(i * N / steps) bins of each
// ordering, N = bins per input.
Curve deletion_curve(const Model& model, const std::vector<EvalItem>& items,
                     const std::vector<BinOrdering>& orderings, std::size_t steps);

// Point i starts from an all-masked input and keeps the last
// floor((steps - i) * N / steps) bins masked, so insertion(o) at i equals
// deletion(reversed(o)) at steps - i.
Curve insertion_curve(const Model& model, const std::vector<EvalItem>& items,
                      const std::vector<BinOrdering>& orderings, std::size_t steps);

// Trapezoidal area.
double auc(const Curve& curve);

// Header "fraction,accuracy,direction,ordering,cam,tap".
void write_curve_csv(std::ostream& out, const Curve& curve, const std::string& ordering,
                     const std::string& cam, const std::string& tap);

}  // namespace camaudit

#endif  // CAMAUDIT_EVAL_CURVES_H_

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

#ifndef CAMAUDIT_MODEL_LOSS_H_
#define CAMAUDIT_MODEL_LOSS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace camaudit {

struct LossResult {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d input scores
};

// -log softmax(logits)[label].
LossResult softmax_cross_entropy(std::span<const double> logits, std::size_t label);

// Cross-entropy after subtracting `margin` from the target logit.
LossResult margin_cross_entropy(std::span<const double> logits, std::size_t label, double margin);

// Additive-margin softmax on cosine similarities:
// CE(scale * (cos - margin * onehot(label))). Gradient is w.r.t. the cosines.
LossResult am_softmax_loss(std::span<const double> cosines, std::size_t label, double margin,
                           double scale);

}  // namespace camaudit

#endif  // CAMAUDIT_MODEL_LOSS_H_

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

#include "camaudit/model/loss.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace camaudit {

LossResult softmax_cross_entropy(std::span<const double> logits, std::size_t label) {
  return margin_cross_entropy(logits, label, 0.0);
}

LossResult margin_cross_entropy(std::span<const double> logits, std::size_t label, double margin) {
  if (label >= logits.size()) {
    throw std::out_of_range("label " + std::to_string(label) + " out of range");
  }
  std::vector<double> z(logits.begin(), logits.end());
  z[label] -= margin;
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - m);
  const double log_norm = m + std::log(sum);
  LossResult r;
  r.loss = log_norm - z[label];
  r.grad.resize(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) r.grad[j] = std::exp(z[j] - log_norm);
  r.grad[label] -= 1.0;
  return r;
}

LossResult am_softmax_loss(std::span<const double> cosines, std::size_t label, double margin,
                           double scale) {
  std::vector<double> logits(cosines.begin(), cosines.end());
  for (double& v : logits) v *= scale;
  LossResult r = margin_cross_entropy(logits, label, scale * margin);
  for (double& g : r.grad) g *= scale;
  return r;
}

}  // namespace camaudit

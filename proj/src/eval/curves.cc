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

#include "camaudit/eval/curves.h"

#include <ostream>
#include <stdexcept>

namespace camaudit {
namespace {

void check_inputs(const std::vector<EvalItem>& items, const std::vector<BinOrdering>& orderings,
                  std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("steps must be at least 1");
  if (items.empty()) throw std::invalid_argument("empty evaluation set");
  if (items.size() != orderings.size()) {
    throw std::invalid_argument("need one ordering per input: " + std::to_string(items.size()) +
                                " inputs, " + std::to_string(orderings.size()) + " orderings");
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& f = items[i].features;
    const auto& o = orderings[i];
    if (o.freq_bins != f.freq_bins || o.frames != f.frames || o.bins.size() != f.size()) {
      throw std::invalid_argument("ordering " + std::to_string(i) + " does not match its input");
    }
  }
}

// Point i masks ordering positions [begin, end) = masked_range(i, N) of
// every input.
template <typename CountFn>
Curve sweep(const Model& model, const std::vector<EvalItem>& items,
            const std::vector<BinOrdering>& orderings, std::size_t steps, Direction direction,
            CountFn masked_range) {
  check_inputs(items, orderings, steps);
  Curve curve;
  curve.direction = direction;
  std::vector<std::size_t> correct(steps + 1, 0);
  for (std::size_t n = 0; n < items.size(); ++n) {
    const Spectrogram& clean = items[n].features;
    const BinOrdering& order = orderings[n];
    const std::size_t total = order.bins.size();
    for (std::size_t i = 0; i <= steps; ++i) {
      const auto [begin, end] = masked_range(i, total);
      Spectrogram masked = clean;
      for (std::size_t b = begin; b < end; ++b) {
        masked.at(order.bins[b].freq, order.bins[b].frame) = kMaskValue;
      }
      if (predict_top1(model, masked).speaker == items[n].label) ++correct[i];
    }
  }
  for (std::size_t i = 0; i <= steps; ++i) {
    curve.xs.push_back(static_cast<double>(i) / static_cast<double>(steps));
    curve.ys.push_back(static_cast<double>(correct[i]) / static_cast<double>(items.size()));
  }
  return curve;
}

}  // namespace

std::string to_string(Direction d) {
  return d == Direction::kDeletion ? "deletion" : "insertion";
}

Curve deletion_curve(const Model& model, const std::vector<EvalItem>& items,
                     const std::vector<BinOrdering>& orderings, std::size_t steps) {
  return sweep(model, items, orderings, steps, Direction::kDeletion,
               [steps](std::size_t i, std::size_t total) {
                 return std::pair<std::size_t, std::size_t>{0, i * total / steps};
               });
}

Curve insertion_curve(const Model& model, const std::vector<EvalItem>& items,
                      const std::vector<BinOrdering>& orderings, std::size_t steps) {
  return sweep(model, items, orderings, steps, Direction::kInsertion,
               [steps](std::size_t i, std::size_t total) {
                 const std::size_t hidden = (steps - i) * total / steps;
                 return std::pair<std::size_t, std::size_t>{total - hidden, total};
               });
}

double auc(const Curve& curve) {
  if (curve.xs.size() != curve.ys.size()) throw std::invalid_argument("curve xs/ys differ in length");
  if (curve.xs.size() < 2) throw std::invalid_argument("auc needs at least two points");
  double area = 0.0;
  for (std::size_t i = 1; i < curve.xs.size(); ++i) {
    area += 0.5 * (curve.xs[i] - curve.xs[i - 1]) * (curve.ys[i] + curve.ys[i - 1]);
  }
  return area;
}

void write_curve_csv(std::ostream& out, const Curve& curve, const std::string& ordering,
                     const std::string& cam, const std::string& tap) {
  out << "fraction,accuracy,direction,ordering,cam,tap\n";
  out.precision(17);
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    out << curve.xs[i] << ',' << curve.ys[i] << ',' << to_string(curve.direction) << ','
        << ordering << ',' << cam << ',' << tap << '\n';
  }
}

}  // namespace camaudit

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

#ifndef CAMAUDIT_NN_NETWORK_H_
#define CAMAUDIT_NN_NETWORK_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "camaudit/nn/layers.h"
#include "camaudit/nn/tensor.h"

namespace camaudit::nn {

// Which class score gradients are taken of.
enum class ScoreKind { kPosterior, kLogit };

std::string_view to_string(ScoreKind kind);

// A sequence of top-level layers ending in class logits. A tap names the
// output of one top-level layer; activations and gradients are captured
// there.
class Network {
 public:
  Network();
  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  // Appends a layer. A non-empty `tap` registers the layer's output under
  // that name.
  void add(LayerPtr layer, std::string tap = {});

  std::size_t num_layers() const { return layers_.size(); }
  const Layer& layer(std::size_t i) const { return *layers_.at(i); }
  Layer& layer(std::size_t i) { return *layers_.at(i); }

  // Tap names in registration order.
  const std::vector<std::string>& tap_names() const { return tap_order_; }
  std::optional<std::size_t> tap_layer(std::string_view tap) const;

  Shape output_shape(const Shape& input) const;
  std::map<std::string, Shape> tap_shapes(const Shape& input) const;

  std::vector<Tensor*> parameters();
  std::vector<const Tensor*> parameters() const;
  std::size_t num_parameter_values() const;
  // Zero-filled tensors shaped like parameters().
  std::vector<Tensor> zero_gradients() const;
  void initialize(std::uint64_t seed);

  // Distinct per instance; copies get a fresh id.
  std::uint64_t id() const { return id_; }

 private:
  std::vector<LayerPtr> layers_;
  std::map<std::string, std::size_t, std::less<>> taps_;
  std::vector<std::string> tap_order_;
  std::uint64_t id_;
};

struct ActivationTrace {
  // Deep copies of each tap's activations (H x W x C for conv taps).
  std::map<std::string, Tensor> taps;
  std::vector<double> logits;
  std::vector<double> posteriors;

  std::uint64_t network_id = 0;
  std::vector<LayerCache> caches;
};

struct GradientTrace {
  std::map<std::string, Tensor> taps;
  std::size_t class_id = 0;
  ScoreKind score_kind = ScoreKind::kPosterior;
};

std::vector<double> softmax(std::span<const double> logits);

// Full forward pass keeping everything backward needs.
ActivationTrace forward(const Network& net, const Tensor& input);

// Inference-only forward; returns logits.
std::vector<double> forward_logits(const Network& net, const Tensor& input);

// Runs layers [first, last) on `x`.
Tensor forward_range(const Network& net, Tensor x, std::size_t first, std::size_t last);

// Gradient of the chosen class score w.r.t. every tap activation.
GradientTrace backward_from_class(const Network& net, const ActivationTrace& trace,
                                  std::size_t class_id,
                                  ScoreKind kind = ScoreKind::kPosterior);

// Backpropagates `dlogits` through the whole network, accumulating parameter
// gradients into `param_grads` (shaped as Network::zero_gradients()).
void backward_parameters(const Network& net, const ActivationTrace& trace,
                         std::span<const double> dlogits, std::span<Tensor> param_grads);

// Central-difference estimate of d score / d tap[flat_index], perturbing
// the tap activation and re-running only the layers after the tap.
double finite_diff_grad(const Network& net, const Tensor& input, std::size_t class_id,
                        std::string_view tap, std::size_t flat_index, double epsilon,
                        ScoreKind kind = ScoreKind::kPosterior);
double finite_diff_grad(const Network& net, const Tensor& input, std::size_t class_id,
                        std::string_view tap, std::array<std::size_t, 3> location,
                        double epsilon, ScoreKind kind = ScoreKind::kPosterior);

// Number of backward passes run since process start (all threads).
std::uint64_t gradient_call_count();

}  // namespace camaudit::nn

#endif  // CAMAUDIT_NN_NETWORK_H_

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

#ifndef CAMAUDIT_NN_LAYERS_H_
#define CAMAUDIT_NN_LAYERS_H_

#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "camaudit/nn/tensor.h"

namespace camaudit::nn {

using Rng = std::mt19937_64;

// Whatever a layer needs to keep from forward for its backward pass.
// Composite layers nest their children's caches.
struct LayerCache {
  std::vector<Tensor> saved;
  std::vector<LayerCache> children;
};

class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string kind() const = 0;
  // Throws std::invalid_argument when the input shape is not accepted.
  virtual Shape output_shape(const Shape& input) const = 0;
  // `cache` is null on inference-only passes.
  virtual Tensor forward(const Tensor& input, LayerCache* cache) const = 0;
  // Returns the gradient w.r.t. the input. `param_grads` is either empty
  // (parameter gradients not wanted) or holds one tensor per parameter, in
  // parameters() order, which are accumulated into.
  virtual Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                          std::span<Tensor> param_grads) const = 0;
  virtual std::vector<Tensor*> parameters() { return {}; }
  virtual void initialize(Rng& /*rng*/) {}
  virtual std::unique_ptr<Layer> clone() const = 0;

  std::vector<const Tensor*> parameters() const;
  std::size_t num_parameter_tensors() const;
};

using LayerPtr = std::unique_ptr<Layer>;

// 2-D convolution over H x W x C tensors with "same" padding (kernel / 2)
// and a configurable stride. Output spatial dims are ceil(in / stride).
class Conv2d final : public Layer {
 public:
  Conv2d(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
         std::size_t stride);

  std::string kind() const override { return "conv2d"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::vector<Tensor*> parameters() override { return {&weight_, &bias_}; }
  void initialize(Rng& rng) override;
  std::unique_ptr<Layer> clone() const override;

  std::size_t in_channels() const { return in_channels_; }
  std::size_t out_channels() const { return out_channels_; }
  // Weight layout: ((kh * kernel + kw) * in_channels + ci) x out_channels.
  Tensor& weight() { return weight_; }
  Tensor& bias() { return bias_; }

 private:
  Tensor im2col(const Tensor& input, std::size_t out_h, std::size_t out_w) const;

  std::size_t in_channels_, out_channels_, kernel_, stride_, pad_;
  Tensor weight_, bias_;
};

class Relu final : public Layer {
 public:
  std::string kind() const override { return "relu"; }
  Shape output_shape(const Shape& input) const override { return input; }
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Relu>(); }
};

class Sigmoid final : public Layer {
 public:
  std::string kind() const override { return "sigmoid"; }
  Shape output_shape(const Shape& input) const override { return input; }
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Sigmoid>(); }
};

double sigmoid(double x);

// Squeeze-and-excitation channel gating:
//   g = sigmoid(W2 relu(W1 mean_hw(x) + b1) + b2),  y = x * g (per channel).
class SqueezeExcite final : public Layer {
 public:
  SqueezeExcite(std::size_t channels, std::size_t hidden);

  std::string kind() const override { return "squeeze_excite"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::vector<Tensor*> parameters() override { return {&w1_, &b1_, &w2_, &b2_}; }
  void initialize(Rng& rng) override;
  std::unique_ptr<Layer> clone() const override;

 private:
  std::size_t channels_, hidden_;
  Tensor w1_, b1_, w2_, b2_;
};

// Affine map over the flattened input: y = W x + b, W is out x in.
class Dense final : public Layer {
 public:
  Dense(std::size_t in_features, std::size_t out_features);

  std::string kind() const override { return "dense"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::vector<Tensor*> parameters() override { return {&weight_, &bias_}; }
  void initialize(Rng& rng) override;
  std::unique_ptr<Layer> clone() const override;

  Tensor& weight() { return weight_; }
  Tensor& bias() { return bias_; }

 private:
  std::size_t in_, out_;
  Tensor weight_, bias_;
};

// Cosine-similarity classifier: y_j = scale * <w_j, x> / (|w_j| |x|).
// Norms below 1e-12 are clamped to 1e-12, so zero weights give zero logits.
class CosineDense final : public Layer {
 public:
  CosineDense(std::size_t in_features, std::size_t out_features, double scale);

  std::string kind() const override { return "cosine_dense"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::vector<Tensor*> parameters() override { return {&weight_}; }
  void initialize(Rng& rng) override;
  std::unique_ptr<Layer> clone() const override;

  double scale() const { return scale_; }
  Tensor& weight() { return weight_; }

 private:
  std::size_t in_, out_;
  double scale_;
  Tensor weight_;
};

// Temporal statistics pooling. H x W x C -> [2 * H * C]: per (row, channel)
// mean over W followed by the population standard deviation over W,
// sqrt(var + 1e-8). Output index is (stat * H + h) * C + c.
class StatsPool final : public Layer {
 public:
  static constexpr double kVarianceFloor = 1e-8;

  std::string kind() const override { return "stats_pool"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<StatsPool>(); }
};

// Layers applied in order.
class Stack final : public Layer {
 public:
  Stack() = default;
  explicit Stack(std::vector<LayerPtr> layers);

  void add(LayerPtr layer) { layers_.push_back(std::move(layer)); }
  std::size_t size() const { return layers_.size(); }

  std::string kind() const override { return "stack"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::vector<Tensor*> parameters() override;
  void initialize(Rng& rng) override;
  std::unique_ptr<Layer> clone() const override;

 private:
  std::vector<LayerPtr> layers_;
};

// y = relu(main(x) + shortcut(x)); an empty shortcut is the identity.
class ResidualUnit final : public Layer {
 public:
  ResidualUnit(Stack main, Stack shortcut);

  std::string kind() const override { return "residual_unit"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, LayerCache* cache) const override;
  Tensor backward(const Tensor& grad_output, const LayerCache& cache,
                  std::span<Tensor> param_grads) const override;
  std::vector<Tensor*> parameters() override;
  void initialize(Rng& rng) override;
  std::unique_ptr<Layer> clone() const override;

 private:
  Stack main_, shortcut_;
};

}  // namespace camaudit::nn

#endif  // CAMAUDIT_NN_LAYERS_H_

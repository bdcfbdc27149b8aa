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

#include "camaudit/nn/layers.h"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camaudit::nn {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstMatMap = Eigen::Map<const RowMatrix>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

constexpr double kNormFloor = 1e-12;

void require_rank3(const Shape& s, const char* who) {
  if (s.size() != 3) {
    throw std::invalid_argument(std::string(who) + " expects an HxWxC input, got " +
                                shape_to_string(s));
  }
}

// He-style uniform init: U(-sqrt(6 / fan_in), sqrt(6 / fan_in)).
void he_uniform(Tensor& t, std::size_t fan_in, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : t.data()) v = dist(rng);
}

ConstMatMap as_matrix(const Tensor& t, std::size_t rows, std::size_t cols) {
  return ConstMatMap(t.data().data(), static_cast<Eigen::Index>(rows),
                     static_cast<Eigen::Index>(cols));
}

MatMap as_matrix(Tensor& t, std::size_t rows, std::size_t cols) {
  return MatMap(t.data().data(), static_cast<Eigen::Index>(rows),
                static_cast<Eigen::Index>(cols));
}

}  // namespace

std::vector<const Tensor*> Layer::parameters() const {
  auto mutable_params = const_cast<Layer*>(this)->parameters();
  return {mutable_params.begin(), mutable_params.end()};
}

std::size_t Layer::num_parameter_tensors() const {
  return const_cast<Layer*>(this)->parameters().size();
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
               std::size_t stride)
    : in_channels_(in_channels),
      out_channels_(out_channels),
      kernel_(kernel),
      stride_(stride),
      pad_(kernel / 2),
      weight_({kernel * kernel * in_channels, out_channels}),
      bias_({out_channels}) {
  if (kernel % 2 == 0) throw std::invalid_argument("conv2d kernel must be odd");
  if (stride == 0) throw std::invalid_argument("conv2d stride must be positive");
}

Shape Conv2d::output_shape(const Shape& input) const {
  require_rank3(input, "conv2d");
  if (input[2] != in_channels_) {
    throw std::invalid_argument("conv2d expects " + std::to_string(in_channels_) +
                                " input channels, got " + std::to_string(input[2]));
  }
  return {(input[0] + stride_ - 1) / stride_, (input[1] + stride_ - 1) / stride_,
          out_channels_};
}

Tensor Conv2d::im2col(const Tensor& input, std::size_t out_h, std::size_t out_w) const {
  const std::size_t in_h = input.dim(0), in_w = input.dim(1), cin = in_channels_;
  const std::size_t k = kernel_;
  Tensor cols({out_h * out_w, k * k * cin});
  const double* src = input.data().data();
  double* dst = cols.data().data();
  for (std::size_t oh = 0; oh < out_h; ++oh) {
    for (std::size_t ow = 0; ow < out_w; ++ow) {
      for (std::size_t kh = 0; kh < k; ++kh) {
        const long ih = static_cast<long>(oh * stride_ + kh) - static_cast<long>(pad_);
        for (std::size_t kw = 0; kw < k; ++kw, dst += cin) {
          const long iw = static_cast<long>(ow * stride_ + kw) - static_cast<long>(pad_);
          if (ih < 0 || iw < 0 || ih >= static_cast<long>(in_h) ||
              iw >= static_cast<long>(in_w)) {
            continue;  // cols is zero-initialised
          }
          std::copy_n(src + (static_cast<std::size_t>(ih) * in_w + static_cast<std::size_t>(iw)) * cin,
                      cin, dst);
        }
      }
    }
  }
  return cols;
}

Tensor Conv2d::forward(const Tensor& input, LayerCache* cache) const {
  const Shape out_shape = output_shape(input.shape());
  const std::size_t positions = out_shape[0] * out_shape[1];
  const std::size_t patch = kernel_ * kernel_ * in_channels_;
  Tensor out(out_shape);
  auto y = as_matrix(out, positions, out_channels_);
  const auto w = as_matrix(weight_, patch, out_channels_);
  if (kernel_ == 1 && stride_ == 1) {
    y.noalias() = as_matrix(input, positions, patch) * w;
  } else {
    const Tensor cols = im2col(input, out_shape[0], out_shape[1]);
    y.noalias() = as_matrix(cols, positions, patch) * w;
  }
  y.rowwise() += ConstVecMap(bias_.data().data(), static_cast<Eigen::Index>(out_channels_))
                     .transpose();
  if (cache) cache->saved = {input};
  return out;
}

Tensor Conv2d::backward(const Tensor& grad_output, const LayerCache& cache,
                        std::span<Tensor> param_grads) const {
  const Tensor& input = cache.saved.at(0);
  const std::size_t out_h = grad_output.dim(0), out_w = grad_output.dim(1);
  const std::size_t positions = out_h * out_w;
  const std::size_t patch = kernel_ * kernel_ * in_channels_;
  const auto g = as_matrix(grad_output, positions, out_channels_);
  const auto w = as_matrix(weight_, patch, out_channels_);
  const bool pointwise = kernel_ == 1 && stride_ == 1;

  if (!param_grads.empty()) {
    auto dw = as_matrix(param_grads[0], patch, out_channels_);
    if (pointwise) {
      dw.noalias() += as_matrix(input, positions, patch).transpose() * g;
    } else {
      const Tensor cols = im2col(input, out_h, out_w);
      dw.noalias() += as_matrix(cols, positions, patch).transpose() * g;
    }
    VecMap db(param_grads[1].data().data(), static_cast<Eigen::Index>(out_channels_));
    db += g.colwise().sum().transpose();
  }

  Tensor grad_input(input.shape());
  if (pointwise) {
    as_matrix(grad_input, positions, patch).noalias() = g * w.transpose();
    return grad_input;
  }
  Tensor dcols({positions, patch});
  as_matrix(dcols, positions, patch).noalias() = g * w.transpose();
  const std::size_t in_h = input.dim(0), in_w = input.dim(1), cin = in_channels_;
  const double* src = dcols.data().data();
  double* dst = grad_input.data().data();
  for (std::size_t oh = 0; oh < out_h; ++oh) {
    for (std::size_t ow = 0; ow < out_w; ++ow) {
      for (std::size_t kh = 0; kh < kernel_; ++kh) {
        const long ih = static_cast<long>(oh * stride_ + kh) - static_cast<long>(pad_);
        for (std::size_t kw = 0; kw < kernel_; ++kw, src += cin) {
          const long iw = static_cast<long>(ow * stride_ + kw) - static_cast<long>(pad_);
          if (ih < 0 || iw < 0 || ih >= static_cast<long>(in_h) ||
              iw >= static_cast<long>(in_w)) {
            continue;
          }
          double* d = dst + (static_cast<std::size_t>(ih) * in_w + static_cast<std::size_t>(iw)) * cin;
          for (std::size_t c = 0; c < cin; ++c) d[c] += src[c];
        }
      }
    }
  }
  return grad_input;
}

void Conv2d::initialize(Rng& rng) {
  he_uniform(weight_, kernel_ * kernel_ * in_channels_, rng);
  bias_.fill(0.0);
}

std::unique_ptr<Layer> Conv2d::clone() const { return std::make_unique<Conv2d>(*this); }

// ---------------------------------------------------------------- Relu / Sigmoid

Tensor Relu::forward(const Tensor& input, LayerCache* cache) const {
  Tensor out = input;
  for (double& v : out.data()) v = v > 0.0 ? v : 0.0;
  if (cache) cache->saved = {out};
  return out;
}

Tensor Relu::backward(const Tensor& grad_output, const LayerCache& cache,
                      std::span<Tensor>) const {
  const Tensor& out = cache.saved.at(0);
  Tensor grad = grad_output;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!(out[i] > 0.0)) grad[i] = 0.0;
  }
  return grad;
}

Tensor Sigmoid::forward(const Tensor& input, LayerCache* cache) const {
  Tensor out = input;
  for (double& v : out.data()) v = sigmoid(v);
  if (cache) cache->saved = {out};
  return out;
}

Tensor Sigmoid::backward(const Tensor& grad_output, const LayerCache& cache,
                         std::span<Tensor>) const {
  const Tensor& out = cache.saved.at(0);
  Tensor grad = grad_output;
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] *= out[i] * (1.0 - out[i]);
  return grad;
}

// ---------------------------------------------------------------- SqueezeExcite

SqueezeExcite::SqueezeExcite(std::size_t channels, std::size_t hidden)
    : channels_(channels),
      hidden_(hidden),
      w1_({hidden, channels}),
      b1_({hidden}),
      w2_({channels, hidden}),
      b2_({channels}) {}

Shape SqueezeExcite::output_shape(const Shape& input) const {
  require_rank3(input, "squeeze_excite");
  if (input[2] != channels_) {
    throw std::invalid_argument("squeeze_excite expects " + std::to_string(channels_) +
                                " channels, got " + std::to_string(input[2]));
  }
  return input;
}

Tensor SqueezeExcite::forward(const Tensor& input, LayerCache* cache) const {
  output_shape(input.shape());
  const std::size_t positions = input.dim(0) * input.dim(1);
  const auto x = as_matrix(input, positions, channels_);
  Tensor squeezed({channels_});
  VecMap s(squeezed.data().data(), static_cast<Eigen::Index>(channels_));
  s = x.colwise().sum().transpose() / static_cast<double>(positions);

  Tensor pre_hidden({hidden_});
  VecMap z1(pre_hidden.data().data(), static_cast<Eigen::Index>(hidden_));
  z1 = as_matrix(w1_, hidden_, channels_) * s +
       ConstVecMap(b1_.data().data(), static_cast<Eigen::Index>(hidden_));
  Tensor hidden = pre_hidden;
  for (double& v : hidden.data()) v = v > 0.0 ? v : 0.0;

  Tensor gate({channels_});
  VecMap g(gate.data().data(), static_cast<Eigen::Index>(channels_));
  g = as_matrix(w2_, channels_, hidden_) *
          ConstVecMap(hidden.data().data(), static_cast<Eigen::Index>(hidden_)) +
      ConstVecMap(b2_.data().data(), static_cast<Eigen::Index>(channels_));
  for (double& v : gate.data()) v = sigmoid(v);

  Tensor out(input.shape());
  as_matrix(out, positions, channels_) = x * g.asDiagonal();
  if (cache) cache->saved = {input, squeezed, pre_hidden, hidden, gate};
  return out;
}

Tensor SqueezeExcite::backward(const Tensor& grad_output, const LayerCache& cache,
                               std::span<Tensor> param_grads) const {
  const Tensor& input = cache.saved.at(0);
  const Tensor& squeezed = cache.saved.at(1);
  const Tensor& pre_hidden = cache.saved.at(2);
  const Tensor& hidden = cache.saved.at(3);
  const Tensor& gate = cache.saved.at(4);
  const std::size_t positions = input.dim(0) * input.dim(1);
  const auto x = as_matrix(input, positions, channels_);
  const auto dy = as_matrix(grad_output, positions, channels_);
  const auto c = static_cast<Eigen::Index>(channels_);
  const auto h = static_cast<Eigen::Index>(hidden_);
  const ConstVecMap g(gate.data().data(), c);

  Eigen::VectorXd dgate = (dy.array() * x.array()).colwise().sum().transpose();
  Eigen::VectorXd dz2 = dgate.array() * g.array() * (1.0 - g.array());
  Eigen::VectorXd dhidden = as_matrix(w2_, channels_, hidden_).transpose() * dz2;
  Eigen::VectorXd dz1 = dhidden;
  for (Eigen::Index i = 0; i < h; ++i) {
    if (!(pre_hidden[static_cast<std::size_t>(i)] > 0.0)) dz1[i] = 0.0;
  }
  Eigen::VectorXd ds = as_matrix(w1_, hidden_, channels_).transpose() * dz1;

  if (!param_grads.empty()) {
    const ConstVecMap s(squeezed.data().data(), c);
    const ConstVecMap a1(hidden.data().data(), h);
    as_matrix(param_grads[0], hidden_, channels_) += dz1 * s.transpose();
    VecMap(param_grads[1].data().data(), h) += dz1;
    as_matrix(param_grads[2], channels_, hidden_) += dz2 * a1.transpose();
    VecMap(param_grads[3].data().data(), c) += dz2;
  }

  Tensor grad_input(input.shape());
  auto dx = as_matrix(grad_input, positions, channels_);
  dx = dy * g.asDiagonal();
  dx.rowwise() += (ds / static_cast<double>(positions)).transpose();
  return grad_input;
}

void SqueezeExcite::initialize(Rng& rng) {
  he_uniform(w1_, channels_, rng);
  he_uniform(w2_, hidden_, rng);
  b1_.fill(0.0);
  b2_.fill(0.0);
}

std::unique_ptr<Layer> SqueezeExcite::clone() const {
  return std::make_unique<SqueezeExcite>(*this);
}

// ---------------------------------------------------------------- Dense

Dense::Dense(std::size_t in_features, std::size_t out_features)
    : in_(in_features),
      out_(out_features),
      weight_({out_features, in_features}),
      bias_({out_features}) {}

Shape Dense::output_shape(const Shape& input) const {
  if (shape_size(input) != in_) {
    throw std::invalid_argument("dense expects " + std::to_string(in_) + " inputs, got " +
                                shape_to_string(input));
  }
  return {out_};
}

Tensor Dense::forward(const Tensor& input, LayerCache* cache) const {
  output_shape(input.shape());
  Tensor out({out_});
  VecMap(out.data().data(), static_cast<Eigen::Index>(out_)) =
      as_matrix(weight_, out_, in_) *
          ConstVecMap(input.data().data(), static_cast<Eigen::Index>(in_)) +
      ConstVecMap(bias_.data().data(), static_cast<Eigen::Index>(out_));
  if (cache) cache->saved = {input};
  return out;
}

Tensor Dense::backward(const Tensor& grad_output, const LayerCache& cache,
                       std::span<Tensor> param_grads) const {
  const Tensor& input = cache.saved.at(0);
  const ConstVecMap g(grad_output.data().data(), static_cast<Eigen::Index>(out_));
  if (!param_grads.empty()) {
    const ConstVecMap x(input.data().data(), static_cast<Eigen::Index>(in_));
    as_matrix(param_grads[0], out_, in_) += g * x.transpose();
    VecMap(param_grads[1].data().data(), static_cast<Eigen::Index>(out_)) += g;
  }
  Tensor grad_input(input.shape());
  VecMap(grad_input.data().data(), static_cast<Eigen::Index>(in_)) =
      as_matrix(weight_, out_, in_).transpose() * g;
  return grad_input;
}

void Dense::initialize(Rng& rng) {
  he_uniform(weight_, in_, rng);
  bias_.fill(0.0);
}

std::unique_ptr<Layer> Dense::clone() const { return std::make_unique<Dense>(*this); }

// ---------------------------------------------------------------- CosineDense

CosineDense::CosineDense(std::size_t in_features, std::size_t out_features, double scale)
    : in_(in_features), out_(out_features), scale_(scale), weight_({out_features, in_features}) {}

Shape CosineDense::output_shape(const Shape& input) const {
  if (shape_size(input) != in_) {
    throw std::invalid_argument("cosine_dense expects " + std::to_string(in_) +
                                " inputs, got " + shape_to_string(input));
  }
  return {out_};
}

Tensor CosineDense::forward(const Tensor& input, LayerCache* cache) const {
  output_shape(input.shape());
  const ConstVecMap x(input.data().data(), static_cast<Eigen::Index>(in_));
  const auto w = as_matrix(weight_, out_, in_);
  const double nx = std::max(x.norm(), kNormFloor);
  Tensor out({out_});
  for (std::size_t j = 0; j < out_; ++j) {
    const auto row = w.row(static_cast<Eigen::Index>(j));
    const double nw = std::max(row.norm(), kNormFloor);
    out[j] = scale_ * row.dot(x) / (nw * nx);
  }
  if (cache) cache->saved = {input};
  return out;
}

Tensor CosineDense::backward(const Tensor& grad_output, const LayerCache& cache,
                             std::span<Tensor> param_grads) const {
  const Tensor& input = cache.saved.at(0);
  const ConstVecMap x(input.data().data(), static_cast<Eigen::Index>(in_));
  const auto w = as_matrix(weight_, out_, in_);
  const double x_norm = x.norm();
  const double nx = std::max(x_norm, kNormFloor);
  const Eigen::VectorXd u = x / nx;

  Eigen::VectorXd gu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(in_));
  for (std::size_t j = 0; j < out_; ++j) {
    const auto row = w.row(static_cast<Eigen::Index>(j));
    const double w_norm = row.norm();
    const double nw = std::max(w_norm, kNormFloor);
    const Eigen::VectorXd v = row.transpose() / nw;
    const double gj = scale_ * grad_output[j];
    gu += gj * v;
    if (!param_grads.empty()) {
      Eigen::VectorXd gv = gj * u;
      if (w_norm >= kNormFloor) gv -= gv.dot(v) * v;
      as_matrix(param_grads[0], out_, in_).row(static_cast<Eigen::Index>(j)) +=
          (gv / nw).transpose();
    }
  }
  if (x_norm >= kNormFloor) gu -= gu.dot(u) * u;
  Tensor grad_input(input.shape());
  VecMap(grad_input.data().data(), static_cast<Eigen::Index>(in_)) = gu / nx;
  return grad_input;
}

void CosineDense::initialize(Rng& rng) { he_uniform(weight_, in_, rng); }

std::unique_ptr<Layer> CosineDense::clone() const {
  return std::make_unique<CosineDense>(*this);
}

// ---------------------------------------------------------------- StatsPool

Shape StatsPool::output_shape(const Shape& input) const {
  require_rank3(input, "stats_pool");
  return {2 * input[0] * input[2]};
}

Tensor StatsPool::forward(const Tensor& input, LayerCache* cache) const {
  const Shape out_shape = output_shape(input.shape());
  const std::size_t height = input.dim(0), width = input.dim(1), channels = input.dim(2);
  Tensor out(out_shape);
  const double inv_w = 1.0 / static_cast<double>(width);
  for (std::size_t h = 0; h < height; ++h) {
    double* mean = &out[h * channels];
    double* stdev = &out[(height + h) * channels];
    for (std::size_t w = 0; w < width; ++w) {
      for (std::size_t c = 0; c < channels; ++c) mean[c] += input.at(h, w, c);
    }
    for (std::size_t c = 0; c < channels; ++c) mean[c] *= inv_w;
    for (std::size_t w = 0; w < width; ++w) {
      for (std::size_t c = 0; c < channels; ++c) {
        const double d = input.at(h, w, c) - mean[c];
        stdev[c] += d * d;
      }
    }
    for (std::size_t c = 0; c < channels; ++c) {
      stdev[c] = std::sqrt(stdev[c] * inv_w + kVarianceFloor);
    }
  }
  if (cache) cache->saved = {input, out};
  return out;
}

Tensor StatsPool::backward(const Tensor& grad_output, const LayerCache& cache,
                           std::span<Tensor>) const {
  const Tensor& input = cache.saved.at(0);
  const Tensor& out = cache.saved.at(1);
  const std::size_t height = input.dim(0), width = input.dim(1), channels = input.dim(2);
  const double inv_w = 1.0 / static_cast<double>(width);
  Tensor grad_input(input.shape());
  for (std::size_t h = 0; h < height; ++h) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double mean = out[h * channels + c];
      const double stdev = out[(height + h) * channels + c];
      const double g_mean = grad_output[h * channels + c] * inv_w;
      const double g_std = grad_output[(height + h) * channels + c] * inv_w / stdev;
      for (std::size_t w = 0; w < width; ++w) {
        grad_input.at(h, w, c) = g_mean + g_std * (input.at(h, w, c) - mean);
      }
    }
  }
  return grad_input;
}

// ---------------------------------------------------------------- Stack

Stack::Stack(std::vector<LayerPtr> layers) : layers_(std::move(layers)) {}

Shape Stack::output_shape(const Shape& input) const {
  Shape s = input;
  for (const auto& l : layers_) s = l->output_shape(s);
  return s;
}

Tensor Stack::forward(const Tensor& input, LayerCache* cache) const {
  if (cache) cache->children.assign(layers_.size(), LayerCache{});
  Tensor x = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    x = layers_[i]->forward(x, cache ? &cache->children[i] : nullptr);
  }
  return x;
}

Tensor Stack::backward(const Tensor& grad_output, const LayerCache& cache,
                       std::span<Tensor> param_grads) const {
  std::vector<std::size_t> offsets(layers_.size() + 1, 0);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    offsets[i + 1] = offsets[i] + layers_[i]->num_parameter_tensors();
  }
  Tensor g = grad_output;
  for (std::size_t i = layers_.size(); i-- > 0;) {
    std::span<Tensor> sub;
    if (!param_grads.empty()) sub = param_grads.subspan(offsets[i], offsets[i + 1] - offsets[i]);
    g = layers_[i]->backward(g, cache.children.at(i), sub);
  }
  return g;
}

std::vector<Tensor*> Stack::parameters() {
  std::vector<Tensor*> out;
  for (auto& l : layers_) {
    auto p = l->parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

void Stack::initialize(Rng& rng) {
  for (auto& l : layers_) l->initialize(rng);
}

std::unique_ptr<Layer> Stack::clone() const {
  std::vector<LayerPtr> copies;
  copies.reserve(layers_.size());
  for (const auto& l : layers_) copies.push_back(l->clone());
  return std::make_unique<Stack>(std::move(copies));
}

// ---------------------------------------------------------------- ResidualUnit

ResidualUnit::ResidualUnit(Stack main, Stack shortcut)
    : main_(std::move(main)), shortcut_(std::move(shortcut)) {}

Shape ResidualUnit::output_shape(const Shape& input) const {
  const Shape a = main_.output_shape(input);
  const Shape b = shortcut_.output_shape(input);
  if (a != b) {
    throw std::invalid_argument("residual branches disagree: " + shape_to_string(a) + " vs " +
                                shape_to_string(b));
  }
  return a;
}

Tensor ResidualUnit::forward(const Tensor& input, LayerCache* cache) const {
  if (cache) cache->children.assign(2, LayerCache{});
  Tensor out = main_.forward(input, cache ? &cache->children[0] : nullptr);
  const Tensor skip = shortcut_.forward(input, cache ? &cache->children[1] : nullptr);
  if (out.shape() != skip.shape()) {
    throw std::invalid_argument("residual branches disagree: " + shape_to_string(out.shape()) +
                                " vs " + shape_to_string(skip.shape()));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = out[i] + skip[i];
    out[i] = v > 0.0 ? v : 0.0;
  }
  if (cache) cache->saved = {out};
  return out;
}

Tensor ResidualUnit::backward(const Tensor& grad_output, const LayerCache& cache,
                              std::span<Tensor> param_grads) const {
  const Tensor& out = cache.saved.at(0);
  Tensor g = grad_output;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(out[i] > 0.0)) g[i] = 0.0;
  }
  std::span<Tensor> main_grads, skip_grads;
  if (!param_grads.empty()) {
    const std::size_t n_main = main_.num_parameter_tensors();
    main_grads = param_grads.subspan(0, n_main);
    skip_grads = param_grads.subspan(n_main);
  }
  Tensor dx = main_.backward(g, cache.children.at(0), main_grads);
  const Tensor dskip = shortcut_.backward(g, cache.children.at(1), skip_grads);
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += dskip[i];
  return dx;
}

std::vector<Tensor*> ResidualUnit::parameters() {
  auto out = main_.parameters();
  auto skip = shortcut_.parameters();
  out.insert(out.end(), skip.begin(), skip.end());
  return out;
}

void ResidualUnit::initialize(Rng& rng) {
  main_.initialize(rng);
  shortcut_.initialize(rng);
}

std::unique_ptr<Layer> ResidualUnit::clone() const {
  auto main_copy = main_.clone();
  auto skip_copy = shortcut_.clone();
  return std::make_unique<ResidualUnit>(std::move(static_cast<Stack&>(*main_copy)),
                                        std::move(static_cast<Stack&>(*skip_copy)));
}

}  // namespace camaudit::nn

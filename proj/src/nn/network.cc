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

#include "camaudit/nn/network.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace camaudit::nn {
namespace {

std::atomic<std::uint64_t> g_gradient_calls{0};
std::atomic<std::uint64_t> g_next_network_id{1};

double class_score(std::span<const double> logits, std::size_t class_id, ScoreKind kind) {
  if (kind == ScoreKind::kLogit) return logits[class_id];
  return softmax(logits)[class_id];
}

// d score / d logits for the chosen class.
std::vector<double> score_gradient(const ActivationTrace& trace, std::size_t class_id,
                                   ScoreKind kind) {
  const std::size_t n = trace.logits.size();
  std::vector<double> g(n, 0.0);
  if (kind == ScoreKind::kLogit) {
    g[class_id] = 1.0;
    return g;
  }
  // dp_c/dz_j = p_c (delta_cj - p_j); 1 - p_c is summed from the other
  // posteriors so it keeps precision when p_c is close to 1.
  const auto& p = trace.posteriors;
  double rest = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != class_id) {
      g[j] = -p[class_id] * p[j];
      rest += p[j];
    }
  }
  g[class_id] = p[class_id] * rest;
  return g;
}

// Walks layers from the last down to `stop`, recording the incoming gradient
// at every tap. Layer `stop` itself is only backpropagated through when
// `through_stop` is set.
Tensor backward_through(const Network& net, const ActivationTrace& trace, Tensor grad,
                        std::size_t stop, bool through_stop, std::span<Tensor> param_grads,
                        std::map<std::string, Tensor>* tap_grads) {
  if (trace.caches.size() != net.num_layers()) {
    throw std::invalid_argument("activation trace does not hold backward state for this network");
  }
  std::vector<std::size_t> offsets(net.num_layers() + 1, 0);
  for (std::size_t i = 0; i < net.num_layers(); ++i) {
    offsets[i + 1] = offsets[i] + net.layer(i).num_parameter_tensors();
  }
  std::vector<std::pair<std::size_t, std::string>> taps;
  for (const auto& name : net.tap_names()) taps.emplace_back(*net.tap_layer(name), name);

  ++g_gradient_calls;
  for (std::size_t i = net.num_layers(); i-- > 0 && i >= stop;) {
    if (tap_grads) {
      for (const auto& [idx, name] : taps) {
        if (idx == i) (*tap_grads)[name] = grad;
      }
    }
    if (i == stop && !through_stop) break;
    std::span<Tensor> sub;
    if (!param_grads.empty()) sub = param_grads.subspan(offsets[i], offsets[i + 1] - offsets[i]);
    grad = net.layer(i).backward(grad, trace.caches[i], sub);
  }
  return grad;
}

}  // namespace

std::string_view to_string(ScoreKind kind) {
  return kind == ScoreKind::kLogit ? "logit" : "posterior";
}

Network::Network() : id_(g_next_network_id++) {}

Network::Network(const Network& other)
    : taps_(other.taps_), tap_order_(other.tap_order_), id_(g_next_network_id++) {
  layers_.reserve(other.layers_.size());
  for (const auto& l : other.layers_) layers_.push_back(l->clone());
}

Network& Network::operator=(const Network& other) {
  if (this != &other) {
    Network copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void Network::add(LayerPtr layer, std::string tap) {
  if (!tap.empty()) {
    if (taps_.count(tap)) throw std::invalid_argument("duplicate tap name " + tap);
    taps_.emplace(tap, layers_.size());
    tap_order_.push_back(std::move(tap));
  }
  layers_.push_back(std::move(layer));
}

std::optional<std::size_t> Network::tap_layer(std::string_view tap) const {
  auto it = taps_.find(tap);
  if (it == taps_.end()) return std::nullopt;
  return it->second;
}

Shape Network::output_shape(const Shape& input) const {
  Shape s = input;
  for (const auto& l : layers_) s = l->output_shape(s);
  return s;
}

std::map<std::string, Shape> Network::tap_shapes(const Shape& input) const {
  std::map<std::string, Shape> out;
  Shape s = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    s = layers_[i]->output_shape(s);
    for (const auto& [name, idx] : taps_) {
      if (idx == i) out[name] = s;
    }
  }
  return out;
}

std::vector<Tensor*> Network::parameters() {
  std::vector<Tensor*> out;
  for (auto& l : layers_) {
    auto p = l->parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::vector<const Tensor*> Network::parameters() const {
  auto p = const_cast<Network*>(this)->parameters();
  return {p.begin(), p.end()};
}

std::size_t Network::num_parameter_values() const {
  std::size_t n = 0;
  for (const Tensor* t : parameters()) n += t->size();
  return n;
}

std::vector<Tensor> Network::zero_gradients() const {
  std::vector<Tensor> out;
  for (const Tensor* t : parameters()) out.emplace_back(t->shape());
  return out;
}

void Network::initialize(std::uint64_t seed) {
  Rng rng(seed);
  for (auto& l : layers_) l->initialize(rng);
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

ActivationTrace forward(const Network& net, const Tensor& input) {
  ActivationTrace trace;
  trace.network_id = net.id();
  trace.caches.resize(net.num_layers());
  std::vector<std::pair<std::size_t, std::string>> taps;
  for (const auto& name : net.tap_names()) taps.emplace_back(*net.tap_layer(name), name);

  Tensor x = input;
  for (std::size_t i = 0; i < net.num_layers(); ++i) {
    x = net.layer(i).forward(x, &trace.caches[i]);
    for (const auto& [idx, name] : taps) {
      if (idx == i) trace.taps[name] = x;
    }
  }
  if (x.rank() != 1) {
    throw std::invalid_argument("network output must be a logit vector, got " +
                                shape_to_string(x.shape()));
  }
  trace.logits.assign(x.values().begin(), x.values().end());
  trace.posteriors = softmax(trace.logits);
  return trace;
}

std::vector<double> forward_logits(const Network& net, const Tensor& input) {
  Tensor out = forward_range(net, input, 0, net.num_layers());
  if (out.rank() != 1) {
    throw std::invalid_argument("network output must be a logit vector, got " +
                                shape_to_string(out.shape()));
  }
  return {out.values().begin(), out.values().end()};
}

Tensor forward_range(const Network& net, Tensor x, std::size_t first, std::size_t last) {
  for (std::size_t i = first; i < last; ++i) x = net.layer(i).forward(x, nullptr);
  return x;
}

GradientTrace backward_from_class(const Network& net, const ActivationTrace& trace,
                                  std::size_t class_id, ScoreKind kind) {
  if (trace.network_id != net.id()) {
    throw std::invalid_argument("activation trace was produced by a different network");
  }
  if (class_id >= trace.logits.size()) {
    throw std::out_of_range("class id " + std::to_string(class_id) + " out of range [0, " +
                            std::to_string(trace.logits.size()) + ")");
  }
  std::size_t lowest = net.num_layers();
  for (const auto& name : net.tap_names()) lowest = std::min(lowest, *net.tap_layer(name));

  GradientTrace out;
  out.class_id = class_id;
  out.score_kind = kind;
  const std::vector<double> g = score_gradient(trace, class_id, kind);
  if (lowest < net.num_layers()) {
    backward_through(net, trace, Tensor::vector(g), lowest, false, {}, &out.taps);
  }
  return out;
}

void backward_parameters(const Network& net, const ActivationTrace& trace,
                         std::span<const double> dlogits, std::span<Tensor> param_grads) {
  if (trace.network_id != net.id()) {
    throw std::invalid_argument("activation trace was produced by a different network");
  }
  if (dlogits.size() != trace.logits.size()) {
    throw std::invalid_argument("logit gradient length mismatch");
  }
  backward_through(net, trace, Tensor::vector({dlogits.begin(), dlogits.end()}), 0, true,
                   param_grads, nullptr);
}

double finite_diff_grad(const Network& net, const Tensor& input, std::size_t class_id,
                        std::string_view tap, std::size_t flat_index, double epsilon,
                        ScoreKind kind) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const auto layer = net.tap_layer(tap);
  if (!layer) throw std::invalid_argument("tap " + std::string(tap) + " is not registered");
  const Tensor activation = forward_range(net, input, 0, *layer + 1);
  if (flat_index >= activation.size()) {
    throw std::out_of_range("location outside tap " + std::string(tap) + " of shape " +
                            shape_to_string(activation.shape()));
  }
  auto score_at = [&](double delta) {
    Tensor x = activation;
    x[flat_index] += delta;
    const Tensor logits = forward_range(net, std::move(x), *layer + 1, net.num_layers());
    if (class_id >= logits.size()) throw std::out_of_range("class id out of range");
    return class_score(logits.data(), class_id, kind);
  };
  return (score_at(epsilon) - score_at(-epsilon)) / (2.0 * epsilon);
}

double finite_diff_grad(const Network& net, const Tensor& input, std::size_t class_id,
                        std::string_view tap, std::array<std::size_t, 3> location,
                        double epsilon, ScoreKind kind) {
  const auto layer = net.tap_layer(tap);
  if (!layer) throw std::invalid_argument("tap " + std::string(tap) + " is not registered");
  const auto shapes = net.tap_shapes(input.shape());
  const Shape& s = shapes.at(std::string(tap));
  if (s.size() != 3 || location[0] >= s[0] || location[1] >= s[1] || location[2] >= s[2]) {
    throw std::out_of_range("location outside tap " + std::string(tap) + " of shape " +
                            shape_to_string(s));
  }
  const std::size_t flat = (location[0] * s[1] + location[1]) * s[2] + location[2];
  return finite_diff_grad(net, input, class_id, tap, flat, epsilon, kind);
}

std::uint64_t gradient_call_count() { return g_gradient_calls.load(); }

}  // namespace camaudit::nn

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

#include "camaudit/model/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camaudit {
namespace {

nn::Stack make_unit(std::size_t in_ch, std::size_t out_ch, std::size_t stride) {
  nn::Stack main;
  main.add(std::make_unique<nn::Conv2d>(in_ch, out_ch, 3, stride));
  main.add(std::make_unique<nn::Relu>());
  main.add(std::make_unique<nn::Conv2d>(out_ch, out_ch, 3, 1));
  main.add(std::make_unique<nn::SqueezeExcite>(out_ch, std::max<std::size_t>(1, out_ch / 4)));
  return main;
}

}  // namespace

std::string to_string(LossKind kind) {
  return kind == LossKind::kAmSoftmax ? "am-softmax" : "softmax";
}

LossKind parse_loss_kind(const std::string& name) {
  if (name == "am-softmax") return LossKind::kAmSoftmax;
  if (name == "softmax") return LossKind::kSoftmax;
  throw std::invalid_argument("unknown loss kind '" + name + "' (am-softmax | softmax)");
}

ModelConfig ModelConfig::full_scale() {
  ModelConfig c;
  c.input_freq_bins = 80;
  c.input_frames = 200;
  c.base_channels = 32;
  c.block_counts = {3, 4, 6, 3};
  c.strides = {1, 2, 2, 2};
  c.embedding_dim = 256;
  c.num_classes = 5994;
  return c;
}

ModelConfig ModelConfig::desk() { return ModelConfig{}; }

void ModelConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw std::invalid_argument(std::string("model config: ") + name + " must be positive");
  };
  positive(input_freq_bins, "input_freq_bins");
  positive(input_frames, "input_frames");
  positive(base_channels, "base_channels");
  positive(embedding_dim, "embedding_dim");
  positive(num_classes, "num_classes");
  for (std::size_t i = 0; i < 4; ++i) {
    positive(block_counts[i], "block_counts");
    positive(strides[i], "strides");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("model config: scale must be positive");
  if (margin < 0.0) throw std::invalid_argument("model config: margin must be non-negative");
}

FeatureNormalizer::FeatureNormalizer(double log_offset, std::vector<double> means,
                                     std::vector<double> stddevs)
    : log_offset_(log_offset), means_(std::move(means)), stddevs_(std::move(stddevs)) {
  if (!(log_offset_ > 0.0)) throw std::invalid_argument("log offset must be positive");
  if (means_.size() != stddevs_.size()) {
    throw std::invalid_argument("normaliser mean/stddev length mismatch");
  }
  for (double s : stddevs_) {
    if (!(s > 0.0)) throw std::invalid_argument("normaliser stddev must be positive");
  }
}

FeatureNormalizer FeatureNormalizer::fit(const std::vector<const Spectrogram*>& raw,
                                         double log_offset) {
  if (raw.empty()) throw std::invalid_argument("cannot fit a normaliser on no data");
  const std::size_t bins = raw.front()->freq_bins;
  std::vector<double> sum(bins, 0.0), sum_sq(bins, 0.0);
  std::size_t count = 0;
  for (const Spectrogram* s : raw) {
    if (s->freq_bins != bins) throw std::invalid_argument("mixed frequency resolutions");
    for (std::size_t f = 0; f < bins; ++f) {
      for (std::size_t t = 0; t < s->frames; ++t) {
        const double v = std::log(s->at(f, t) + log_offset);
        sum[f] += v;
        sum_sq[f] += v * v;
      }
    }
    count += s->frames;
  }
  std::vector<double> means(bins), stddevs(bins);
  for (std::size_t f = 0; f < bins; ++f) {
    means[f] = sum[f] / static_cast<double>(count);
    const double var = sum_sq[f] / static_cast<double>(count) - means[f] * means[f];
    stddevs[f] = std::sqrt(std::max(var, 0.0) + 1e-8);
  }
  return FeatureNormalizer(log_offset, std::move(means), std::move(stddevs));
}

Spectrogram FeatureNormalizer::apply(const Spectrogram& raw) const {
  if (fitted() && raw.freq_bins != means_.size()) {
    throw std::invalid_argument("normaliser fitted on " + std::to_string(means_.size()) +
                                " bins, input has " + std::to_string(raw.freq_bins));
  }
  Spectrogram out = raw;
  for (std::size_t f = 0; f < raw.freq_bins; ++f) {
    for (std::size_t t = 0; t < raw.frames; ++t) {
      double v = std::log(raw.at(f, t) + log_offset_);
      if (fitted()) v = (v - means_[f]) / stddevs_[f];
      out.at(f, t) = v;
    }
  }
  return out;
}

Model::Model(ModelConfig config, nn::Network network, FeatureNormalizer normalizer)
    : config_(std::move(config)), network_(std::move(network)), normalizer_(std::move(normalizer)) {}

nn::Tensor Model::to_input(const Spectrogram& features) const {
  if (features.freq_bins != config_.input_freq_bins || features.frames == 0) {
    throw std::invalid_argument(
        "input is " + std::to_string(features.freq_bins) + "x" + std::to_string(features.frames) +
        " (bins x frames), model expects " + std::to_string(config_.input_freq_bins) +
        " frequency bins and at least one frame");
  }
  return to_tensor(features);
}

std::map<std::string, nn::Shape> Model::tap_shapes(std::size_t frames) const {
  return network_.tap_shapes({config_.input_freq_bins, frames, 1});
}

std::size_t Model::pooled_length() const {
  const nn::Shape s4 = tap_shapes().at("S4");
  return 2 * s4[0] * s4[2];
}

Model build_model(const ModelConfig& config) {
  config.validate();
  nn::Network net;
  const std::size_t base = config.base_channels;
  net.add(std::make_unique<nn::Conv2d>(1, base, 3, 1));
  net.add(std::make_unique<nn::Relu>());

  std::size_t in_ch = base;
  std::size_t height = config.input_freq_bins;
  for (std::size_t b = 0; b < 4; ++b) {
    const std::size_t out_ch = base << b;
    nn::Stack block;
    for (std::size_t u = 0; u < config.block_counts[b]; ++u) {
      const std::size_t stride = u == 0 ? config.strides[b] : 1;
      nn::Stack shortcut;
      if (stride != 1 || in_ch != out_ch) {
        shortcut.add(std::make_unique<nn::Conv2d>(in_ch, out_ch, 1, stride));
      }
      block.add(std::make_unique<nn::ResidualUnit>(make_unit(in_ch, out_ch, stride),
                                                   std::move(shortcut)));
      in_ch = out_ch;
    }
    height = (height + config.strides[b] - 1) / config.strides[b];
    net.add(std::make_unique<nn::Stack>(std::move(block)), Model::kTapNames[b]);
  }
  net.add(std::make_unique<nn::StatsPool>());
  const std::size_t pooled = 2 * height * in_ch;
  net.add(std::make_unique<nn::Dense>(pooled, config.embedding_dim));
  if (config.loss_kind == LossKind::kAmSoftmax) {
    net.add(std::make_unique<nn::CosineDense>(config.embedding_dim, config.num_classes,
                                              config.scale));
  } else {
    net.add(std::make_unique<nn::Dense>(config.embedding_dim, config.num_classes));
  }
  // Shape inference over the configured input catches collapsed axes.
  const nn::Shape out = net.output_shape({config.input_freq_bins, config.input_frames, 1});
  if (out != nn::Shape{config.num_classes}) throw std::logic_error("unexpected head shape");
  net.initialize(config.seed);
  return Model(config, std::move(net));
}

nn::ActivationTrace forward(const Model& model, const Spectrogram& features) {
  return nn::forward(model.network(), model.to_input(features));
}

nn::GradientTrace backward_from_class(const Model& model, const nn::ActivationTrace& trace,
                                      std::size_t class_id, nn::ScoreKind kind) {
  return nn::backward_from_class(model.network(), trace, class_id, kind);
}

double finite_diff_grad(const Model& model, const Spectrogram& features, std::size_t class_id,
                        const std::string& tap, std::array<std::size_t, 3> location,
                        double epsilon, nn::ScoreKind kind) {
  return nn::finite_diff_grad(model.network(), model.to_input(features), class_id, tap, location,
                              epsilon, kind);
}

std::vector<double> predict_posteriors(const Model& model, const Spectrogram& features) {
  return nn::softmax(nn::forward_logits(model.network(), model.to_input(features)));
}

Prediction predict_top1(const Model& model, const Spectrogram& features) {
  const auto p = predict_posteriors(model, features);
  const auto it = std::max_element(p.begin(), p.end());
  return {static_cast<std::size_t>(it - p.begin()), *it};
}

}  // namespace camaudit

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

#ifndef CAMAUDIT_MODEL_MODEL_H_
#define CAMAUDIT_MODEL_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "camaudit/data/spectrogram.h"
#include "camaudit/nn/network.h"

namespace camaudit {

enum class LossKind { kAmSoftmax, kSoftmax };

std::string to_string(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

// ResNet-SE speaker classifier hyper-parameters. Block i (1-based) has
// base_channels * 2^(i-1) channels.
struct ModelConfig {
  std::size_t input_freq_bins = 40;
  std::size_t input_frames = 100;
  std::size_t base_channels = 8;
  std::array<std::size_t, 4> block_counts{1, 1, 1, 1};
  std::array<std::size_t, 4> strides{1, 2, 2, 2};
  std::size_t embedding_dim = 64;
  std::size_t num_classes = 32;
  LossKind loss_kind = LossKind::kAmSoftmax;
  double margin = 0.2;
  double scale = 30.0;
  std::uint64_t seed = 1;

  // 80 x 200 input, ResNet34 block layout, 5994 speakers.
  static ModelConfig full_scale();
  // Reduced model used for every experiment.
  static ModelConfig desk();

  void validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// log(energy + offset) followed by per-frequency-bin mean/variance
// normalisation. An unfitted normaliser only applies the log.
class FeatureNormalizer {
 public:
  static constexpr double kDefaultLogOffset = 1e-2;

  FeatureNormalizer() = default;
  FeatureNormalizer(double log_offset, std::vector<double> means, std::vector<double> stddevs);

  // Statistics over every frame of every spectrogram.
  static FeatureNormalizer fit(const std::vector<const Spectrogram*>& raw,
                               double log_offset = kDefaultLogOffset);

  Spectrogram apply(const Spectrogram& raw) const;

  bool fitted() const { return !means_.empty(); }
  double log_offset() const { return log_offset_; }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& stddevs() const { return stddevs_; }

  friend bool operator==(const FeatureNormalizer&, const FeatureNormalizer&) = default;

 private:
  double log_offset_ = kDefaultLogOffset;
  std::vector<double> means_;
  std::vector<double> stddevs_;
};

class Model {
 public:
  static constexpr std::array<const char*, 4> kTapNames{"S1", "S2", "S3", "S4"};

  Model(ModelConfig config, nn::Network network, FeatureNormalizer normalizer = {});

  const ModelConfig& config() const { return config_; }
  const nn::Network& network() const { return network_; }
  nn::Network& network() { return network_; }
  const FeatureNormalizer& normalizer() const { return normalizer_; }
  void set_normalizer(FeatureNormalizer n) { normalizer_ = std::move(n); }

  // Raw energies -> model features.
  Spectrogram featurize(const Spectrogram& raw) const { return normalizer_.apply(raw); }

  // Validates the feature grid against the configured frequency axis. The
  // time axis is free: statistics pooling makes the head length-agnostic.
  nn::Tensor to_input(const Spectrogram& features) const;

  std::map<std::string, nn::Shape> tap_shapes(std::size_t frames) const;
  std::map<std::string, nn::Shape> tap_shapes() const { return tap_shapes(config_.input_frames); }
  // Length of the pooled statistics vector feeding the dense layers.
  std::size_t pooled_length() const;

 private:
  ModelConfig config_;
  nn::Network network_;
  FeatureNormalizer normalizer_;
};

// Builds the network with seeded He-uniform initialisation.
Model build_model(const ModelConfig& config);

nn::ActivationTrace forward(const Model& model, const Spectrogram& features);
nn::GradientTrace backward_from_class(const Model& model, const nn::ActivationTrace& trace,
                                      std::size_t class_id,
                                      nn::ScoreKind kind = nn::ScoreKind::kPosterior);
double finite_diff_grad(const Model& model, const Spectrogram& features, std::size_t class_id,
                        const std::string& tap, std::array<std::size_t, 3> location,
                        double epsilon, nn::ScoreKind kind = nn::ScoreKind::kPosterior);

struct Prediction {
  std::size_t speaker = 0;
  double posterior = 0.0;
};

std::vector<double> predict_posteriors(const Model& model, const Spectrogram& features);
// Ties go to the lower class index.
Prediction predict_top1(const Model& model, const Spectrogram& features);

}  // namespace camaudit

#endif  // CAMAUDIT_MODEL_MODEL_H_

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

#ifndef CAMAUDIT_MODEL_TRAIN_H_
#define CAMAUDIT_MODEL_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "camaudit/data/manifest.h"
#include "camaudit/model/loss.h"
#include "camaudit/model/model.h"

namespace camaudit {

struct TrainConfig {
  std::size_t epochs = 12;
  std::size_t batch_size = 16;
  double learning_rate = 2e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t heldout_per_speaker = 6;
  std::uint64_t seed = 7;
  // Held-out top-1 accuracy a run must reach to count as successful.
  double accuracy_threshold = 0.9;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;  // mean training loss over the epoch's updates
  double heldout_top1 = 0.0;
};

struct TrainingLog {
  double initial_loss = 0.0;
  std::vector<EpochRecord> epochs;

  double final_heldout_top1() const { return epochs.empty() ? 0.0 : epochs.back().heldout_top1; }
  // Header "epoch,loss,heldout_top1", one row per epoch.
  void write_csv(std::ostream& out) const;
};

struct TrainResult {
  Model model;
  TrainingLog log;
};

struct LabeledFeatures {
  Spectrogram features;
  std::size_t label = 0;
};

// Mean loss of the model's configured kind over the examples.
double mean_loss(const Model& model, const std::vector<LabeledFeatures>& examples);
double top1_accuracy(const Model& model, const std::vector<LabeledFeatures>& examples);

// Loss and its gradient w.r.t. the network's logits.
LossResult training_loss(const Model& model, std::span<const double> logits, std::size_t label);

// Fits the feature normaliser on the training split, then runs seeded Adam
// over shuffled mini-batches. Validates labels and sizes before any update.
TrainResult train(Model model, const Corpus& corpus, const TrainConfig& config);
TrainResult train(Model model, const std::filesystem::path& manifest, const TrainConfig& config);

}  // namespace camaudit

#endif  // CAMAUDIT_MODEL_TRAIN_H_

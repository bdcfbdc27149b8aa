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

#include "camaudit/model/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace camaudit {
namespace {

struct AdamState {
  std::vector<nn::Tensor> m, v;
  std::size_t step = 0;
};

void adam_update(nn::Network& net, std::vector<nn::Tensor>& grads, AdamState& state,
                 const TrainConfig& cfg, double grad_scale) {
  auto params = net.parameters();
  ++state.step;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t p = 0; p < params.size(); ++p) {
    auto w = params[p]->data();
    auto g = grads[p].data();
    auto m = state.m[p].data();
    auto v = state.v[p].data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double gi = g[i] * grad_scale;
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
      w[i] -= cfg.learning_rate * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + cfg.adam_epsilon);
    }
  }
}

}  // namespace

void TrainingLog::write_csv(std::ostream& out) const {
  out << "epoch,loss,heldout_top1\n";
  out.precision(10);
  for (const auto& e : epochs) {
    out << e.epoch << ',' << std::fixed << e.loss << ',' << e.heldout_top1 << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

LossResult training_loss(const Model& model, std::span<const double> logits, std::size_t label) {
  const ModelConfig& c = model.config();
  if (c.loss_kind == LossKind::kAmSoftmax) {
    // The cosine head already multiplies by the scale, so the margin is
    // applied in logit units.
    return margin_cross_entropy(logits, label, c.scale * c.margin);
  }
  return softmax_cross_entropy(logits, label);
}

double mean_loss(const Model& model, const std::vector<LabeledFeatures>& examples) {
  if (examples.empty()) throw std::invalid_argument("no examples");
  double total = 0.0;
  for (const auto& ex : examples) {
    const auto logits = nn::forward_logits(model.network(), model.to_input(ex.features));
    total += training_loss(model, logits, ex.label).loss;
  }
  return total / static_cast<double>(examples.size());
}

double top1_accuracy(const Model& model, const std::vector<LabeledFeatures>& examples) {
  if (examples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : examples) correct += predict_top1(model, ex.features).speaker == ex.label;
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

TrainResult train(Model model, const Corpus& corpus, const TrainConfig& config) {
  if (corpus.utterances.empty()) throw std::invalid_argument("training set is empty");
  if (config.batch_size == 0) throw std::invalid_argument("batch size must be positive");
  const std::size_t classes = model.config().num_classes;
  if (corpus.manifest.num_speakers != 0 && corpus.manifest.num_speakers != classes) {
    throw std::invalid_argument("dataset has " + std::to_string(corpus.manifest.num_speakers) +
                                " speakers, model has " + std::to_string(classes) + " classes");
  }
  std::vector<std::size_t> per_speaker(classes, 0);
  for (const auto& u : corpus.utterances) {
    if (u.speaker >= classes) {
      throw std::invalid_argument("label " + std::to_string(u.speaker) + " out of range for " +
                                  std::to_string(classes) + " classes");
    }
    if (u.spec.freq_bins != model.config().input_freq_bins) {
      throw std::invalid_argument("utterance frequency bins do not match the model");
    }
    ++per_speaker[u.speaker];
  }

  std::vector<const Spectrogram*> train_raw;
  std::vector<const Utterance*> train_utts, heldout_utts;
  for (const auto& u : corpus.utterances) {
    if (is_heldout(u, per_speaker[u.speaker], config.heldout_per_speaker)) {
      heldout_utts.push_back(&u);
    } else {
      train_utts.push_back(&u);
      train_raw.push_back(&u.spec);
    }
  }
  if (train_utts.empty()) throw std::invalid_argument("every utterance is held out");

  model.set_normalizer(FeatureNormalizer::fit(train_raw));
  std::vector<LabeledFeatures> train_set, heldout_set;
  for (const Utterance* u : train_utts) train_set.push_back({model.featurize(u->spec), u->speaker});
  for (const Utterance* u : heldout_utts) heldout_set.push_back({model.featurize(u->spec), u->speaker});

  TrainingLog log;
  log.initial_loss = mean_loss(model, train_set);

  nn::Network& net = model.network();
  AdamState adam;
  adam.m = net.zero_gradients();
  adam.v = net.zero_gradients();
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::mt19937_64 rng(config.seed * 1000003ULL + epoch);
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      auto grads = net.zero_gradients();
      for (std::size_t i = start; i < end; ++i) {
        const LabeledFeatures& ex = train_set[order[i]];
        const auto trace = nn::forward(net, model.to_input(ex.features));
        const LossResult loss = training_loss(model, trace.logits, ex.label);
        epoch_loss += loss.loss;
        nn::backward_parameters(net, trace, loss.grad, grads);
      }
      adam_update(net, grads, adam, config, 1.0 / static_cast<double>(end - start));
    }
    log.epochs.push_back({epoch, epoch_loss / static_cast<double>(order.size()),
                          top1_accuracy(model, heldout_set)});
  }
  return {std::move(model), std::move(log)};
}

TrainResult train(Model model, const std::filesystem::path& manifest, const TrainConfig& config) {
  return train(std::move(model), load_corpus(manifest), config);
}

}  // namespace camaudit

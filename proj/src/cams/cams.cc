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

#include "camaudit/cams/cams.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace camaudit {
namespace {

void require_pair(const nn::Tensor& a, const nn::Tensor& g) {
  if (a.rank() != 3 || a.shape() != g.shape()) {
    throw std::invalid_argument("activation " + nn::shape_to_string(a.shape()) +
                                " and gradient " + nn::shape_to_string(g.shape()) +
                                " must be matching HxWxC tensors");
  }
}

const nn::Tensor& tap_of(const std::map<std::string, nn::Tensor>& taps, const std::string& tap,
                         const char* what) {
  auto it = taps.find(tap);
  if (it == taps.end()) throw std::invalid_argument(std::string(what) + " has no tap " + tap);
  return it->second;
}

// relu(sum_k w_k A^k)
SaliencyMap combine_channels(const nn::Tensor& a, const std::vector<double>& weights) {
  const std::size_t h = a.dim(0), w = a.dim(1), c = a.dim(2);
  SaliencyMap map(h, w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < c; ++k) s += weights[k] * a.at(i, j, k);
      map.at(i, j) = std::max(s, 0.0);
    }
  }
  return map;
}

}  // namespace

SaliencyMap grad_cam(const nn::Tensor& activation, const nn::Tensor& gradient,
                     const std::string& tap) {
  require_pair(activation, gradient);
  const std::size_t h = activation.dim(0), w = activation.dim(1), c = activation.dim(2);
  std::vector<double> weights(c, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      for (std::size_t k = 0; k < c; ++k) weights[k] += gradient.at(i, j, k);
    }
  }
  for (double& wk : weights) wk /= static_cast<double>(h * w);
  SaliencyMap map = combine_channels(activation, weights);
  map.algorithm = CamKind::kGradCam;
  map.tap = tap;
  return map;
}

SaliencyMap grad_cam_pp(const nn::Tensor& activation, const nn::Tensor& gradient,
                        const std::string& tap) {
  require_pair(activation, gradient);
  const std::size_t h = activation.dim(0), w = activation.dim(1), c = activation.dim(2);
  std::vector<double> channel_sum(c, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      for (std::size_t k = 0; k < c; ++k) channel_sum[k] += activation.at(i, j, k);
    }
  }
  std::vector<double> weights(c, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      for (std::size_t k = 0; k < c; ++k) {
        const double g = gradient.at(i, j, k);
        if (!(g > 0.0)) continue;  // relu(g) == 0
        // g^2 / (2 g^2 + sum A g^3) with g^2 cancelled.
        const double denom = 2.0 + channel_sum[k] * g;
        const double alpha = std::abs(denom) < kAlphaDenominatorFloor ? 0.0 : 1.0 / denom;
        weights[k] += alpha * g;
      }
    }
  }
  for (double& wk : weights) wk /= static_cast<double>(h * w);
  SaliencyMap map = combine_channels(activation, weights);
  map.algorithm = CamKind::kGradCamPP;
  map.tap = tap;
  return map;
}

SaliencyMap layer_cam(const nn::Tensor& activation, const nn::Tensor& gradient,
                      const std::string& tap) {
  require_pair(activation, gradient);
  const std::size_t h = activation.dim(0), w = activation.dim(1), c = activation.dim(2);
  SaliencyMap map(h, w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < c; ++k) {
        s += std::max(gradient.at(i, j, k), 0.0) * activation.at(i, j, k);
      }
      map.at(i, j) = std::max(s, 0.0);
    }
  }
  map.algorithm = CamKind::kLayerCam;
  map.tap = tap;
  return map;
}

SaliencyMap grad_cam(const nn::ActivationTrace& trace, const nn::GradientTrace& grads,
                     const std::string& tap) {
  return grad_cam(tap_of(trace.taps, tap, "activation trace"),
                  tap_of(grads.taps, tap, "gradient trace"), tap);
}

SaliencyMap grad_cam_pp(const nn::ActivationTrace& trace, const nn::GradientTrace& grads,
                        const std::string& tap) {
  return grad_cam_pp(tap_of(trace.taps, tap, "activation trace"),
                     tap_of(grads.taps, tap, "gradient trace"), tap);
}

SaliencyMap layer_cam(const nn::ActivationTrace& trace, const nn::GradientTrace& grads,
                      const std::string& tap) {
  return layer_cam(tap_of(trace.taps, tap, "activation trace"),
                   tap_of(grads.taps, tap, "gradient trace"), tap);
}

SaliencyMap score_cam(const Model& model, const Spectrogram& features, const std::string& tap,
                      std::optional<std::size_t> class_id) {
  const nn::Network& net = model.network();
  const auto layer = net.tap_layer(tap);
  if (!layer) throw std::invalid_argument("model has no tap " + tap);
  const nn::Tensor input = model.to_input(features);
  std::size_t target = 0;
  if (class_id) {
    if (*class_id >= model.config().num_classes) throw std::out_of_range("class id out of range");
    target = *class_id;
  } else {
    target = predict_top1(model, features).speaker;
  }

  const nn::Tensor act = nn::forward_range(net, input, 0, *layer + 1);
  const std::size_t h = act.dim(0), w = act.dim(1), c = act.dim(2);
  std::vector<double> weights(c);
  Spectrogram masked = features;
  for (std::size_t k = 0; k < c; ++k) {
    SaliencyMap channel(h, w);
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < w; ++j) channel.at(i, j) = act.at(i, j, k);
    }
    const SaliencyMap mask =
        normalize_minmax(upsample(channel, features.freq_bins, features.frames));
    for (std::size_t n = 0; n < masked.values.size(); ++n) {
      masked.values[n] = features.values[n] * mask.values[n];
    }
    weights[k] = predict_posteriors(model, masked)[target];
  }
  SaliencyMap map = combine_channels(act, weights);
  map.algorithm = CamKind::kScoreCam;
  map.tap = tap;
  return map;
}

SaliencyMap upsample(const SaliencyMap& map, std::size_t height, std::size_t width) {
  if (height < map.height || width < map.width) {
    throw std::invalid_argument("upsample cannot shrink " + std::to_string(map.height) + "x" +
                                std::to_string(map.width) + " to " + std::to_string(height) +
                                "x" + std::to_string(width));
  }
  if (map.height == 0 || map.width == 0) throw std::invalid_argument("empty saliency map");
  SaliencyMap out = map;
  out.height = height;
  out.width = width;
  out.values.assign(height * width, 0.0);

  auto coord = [](std::size_t i, std::size_t src, std::size_t dst) {
    if (dst == 1) return 0.0;
    return static_cast<double>(i * (src - 1)) / static_cast<double>(dst - 1);
  };
  for (std::size_t i = 0; i < height; ++i) {
    const double y = coord(i, map.height, height);
    const auto y0 = static_cast<std::size_t>(y);
    const std::size_t y1 = std::min(y0 + 1, map.height - 1);
    const double fy = y - static_cast<double>(y0);
    for (std::size_t j = 0; j < width; ++j) {
      const double x = coord(j, map.width, width);
      const auto x0 = static_cast<std::size_t>(x);
      const std::size_t x1 = std::min(x0 + 1, map.width - 1);
      const double fx = x - static_cast<double>(x0);
      // a + f * (b - a) keeps constants exact.
      const double top = map.at(y0, x0) + fx * (map.at(y0, x1) - map.at(y0, x0));
      const double bottom = map.at(y1, x0) + fx * (map.at(y1, x1) - map.at(y1, x0));
      out.at(i, j) = top + fy * (bottom - top);
    }
  }
  return out;
}

SaliencyMap normalize_minmax(const SaliencyMap& map) {
  if (map.state != NormState::kRaw) {
    throw std::invalid_argument("min-max normalisation expects a raw map, got " +
                                to_string(map.state));
  }
  SaliencyMap out = map;
  out.state = NormState::kMinMax;
  if (map.values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(map.values.begin(), map.values.end());
  const double min = *lo, range = *hi - *lo;
  if (!(range > 0.0)) {
    std::fill(out.values.begin(), out.values.end(), 0.0);
    out.degenerate = true;
    return out;
  }
  for (double& v : out.values) v = (v - min) / range;
  out.degenerate = false;
  return out;
}

SaliencyMap tanh_rescale(const SaliencyMap& map, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (map.state != NormState::kMinMax) {
    throw std::invalid_argument("tanh rescaling expects a min-max map, got " +
                                to_string(map.state));
  }
  SaliencyMap out = map;
  out.state = NormState::kScaled;
  out.gamma = gamma;
  const double max = map.values.empty() ? 0.0 : *std::max_element(map.values.begin(), map.values.end());
  if (map.degenerate || !(max > 0.0)) {
    std::fill(out.values.begin(), out.values.end(), 0.0);
    return out;
  }
  for (double& v : out.values) v = std::tanh(gamma * v / max);
  return out;
}

SaliencyMap aggregate_maps(const std::vector<SaliencyMap>& maps, std::size_t height,
                           std::size_t width) {
  if (maps.empty()) throw std::invalid_argument("cannot aggregate an empty list of maps");
  std::string name;
  for (const auto& m : maps) {
    if (m.state != NormState::kScaled) throw std::invalid_argument("aggregation expects scaled maps");
    if (m.algorithm != maps.front().algorithm) {
      throw std::invalid_argument("cannot aggregate maps of different algorithms");
    }
    if (!name.empty()) name += '+';
    name += m.tap;
  }
  SaliencyMap out(height, width);
  out.algorithm = maps.front().algorithm;
  out.state = NormState::kScaled;
  out.gamma = maps.front().gamma;
  out.tap = name;
  out.degenerate = true;
  for (const auto& m : maps) {
    const SaliencyMap up = upsample(m, height, width);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += up.values[i];
    out.degenerate = out.degenerate && m.degenerate;
  }
  for (double& v : out.values) v /= static_cast<double>(maps.size());
  return out;
}

std::vector<std::string> split_tap_set(const std::string& tap_set) {
  std::vector<std::string> taps;
  std::istringstream is(tap_set);
  std::string tap;
  while (std::getline(is, tap, '+')) {
    if (tap.empty()) throw std::invalid_argument("malformed tap set '" + tap_set + "'");
    taps.push_back(tap);
  }
  if (taps.empty()) throw std::invalid_argument("empty tap set");
  return taps;
}

std::map<std::string, SaliencyMap> compute_raw_maps(const Model& model, const Spectrogram& features,
                                                    CamKind kind,
                                                    const std::vector<std::string>& taps,
                                                    std::size_t class_id, nn::ScoreKind score) {
  for (const auto& tap : taps) {
    if (!model.network().tap_layer(tap)) throw std::invalid_argument("model has no tap " + tap);
  }
  std::map<std::string, SaliencyMap> out;
  if (kind == CamKind::kScoreCam) {
    for (const auto& tap : taps) out[tap] = score_cam(model, features, tap, class_id);
    return out;
  }
  const auto trace = forward(model, features);
  const auto grads = backward_from_class(model, trace, class_id, score);
  for (const auto& tap : taps) {
    switch (kind) {
      case CamKind::kGradCam: out[tap] = grad_cam(trace, grads, tap); break;
      case CamKind::kGradCamPP: out[tap] = grad_cam_pp(trace, grads, tap); break;
      case CamKind::kLayerCam: out[tap] = layer_cam(trace, grads, tap); break;
      case CamKind::kScoreCam: break;
    }
  }
  return out;
}

SaliencyMap scaled_at_input(const SaliencyMap& raw, std::size_t height, std::size_t width,
                            double gamma) {
  return upsample(tanh_rescale(normalize_minmax(raw), gamma), height, width);
}

SaliencyMap tap_set_map(const std::map<std::string, SaliencyMap>& raw_maps,
                        const std::string& tap_set, std::size_t height, std::size_t width,
                        double gamma) {
  const auto taps = split_tap_set(tap_set);
  auto raw = [&](const std::string& tap) -> const SaliencyMap& {
    auto it = raw_maps.find(tap);
    if (it == raw_maps.end()) throw std::invalid_argument("no saliency map for tap " + tap);
    return it->second;
  };
  if (taps.size() == 1) return scaled_at_input(raw(taps[0]), height, width, gamma);
  std::vector<SaliencyMap> scaled;
  for (const auto& tap : taps) scaled.push_back(tanh_rescale(normalize_minmax(raw(tap)), gamma));
  return aggregate_maps(scaled, height, width);
}

}  // namespace camaudit

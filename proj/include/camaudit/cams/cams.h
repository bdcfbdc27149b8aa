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

#ifndef CAMAUDIT_CAMS_CAMS_H_
#define CAMAUDIT_CAMS_CAMS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "camaudit/cams/saliency_map.h"
#include "camaudit/model/model.h"
#include "camaudit/nn/network.h"

namespace camaudit {

inline constexpr double kDefaultGamma = 5.0;
// Grad-CAM++ alpha is zero wherever |2 + sum_ab A_ab * g| falls below this.
inline constexpr double kAlphaDenominatorFloor = 1e-12;

// Gradient CAMs on one tap of an H x W x C activation / gradient pair.
//   grad_cam:    w_k = mean_ij g_ijk;                     S = relu(sum_k w_k A^k)
//   grad_cam_pp: w_k = (1/Z) sum_ij alpha_ijk relu(g_ijk); S = relu(sum_k w_k A^k)
//                alpha_ijk = g^2 / (2 g^2 + (sum_ab A^k_ab) g^3), evaluated as
//                1 / (2 + (sum_ab A^k_ab) g)
//   layer_cam:   S_ij = relu(sum_k relu(g_ijk) A_ijk)
// All return raw maps at tap resolution.
SaliencyMap grad_cam(const nn::Tensor& activation, const nn::Tensor& gradient,
                     const std::string& tap = {});
SaliencyMap grad_cam_pp(const nn::Tensor& activation, const nn::Tensor& gradient,
                        const std::string& tap = {});
SaliencyMap layer_cam(const nn::Tensor& activation, const nn::Tensor& gradient,
                      const std::string& tap = {});

SaliencyMap grad_cam(const nn::ActivationTrace& trace, const nn::GradientTrace& grads,
                     const std::string& tap);
SaliencyMap grad_cam_pp(const nn::ActivationTrace& trace, const nn::GradientTrace& grads,
                        const std::string& tap);
SaliencyMap layer_cam(const nn::ActivationTrace& trace, const nn::GradientTrace& grads,
                      const std::string& tap);

// Gradient-free. Each channel A^k is upsampled to the input size, min-max
// normalised (a constant channel gives an all-zero mask) and multiplied into
// the input; the posterior of `class_id` on that masked input is the
// channel weight. Without `class_id` the class predicted on the clean input
// is used.
SaliencyMap score_cam(const Model& model, const Spectrogram& features, const std::string& tap,
                      std::optional<std::size_t> class_id = std::nullopt);

// Bilinear interpolation with corner alignment. Shrinking either axis is
// rejected.
SaliencyMap upsample(const SaliencyMap& map, std::size_t height, std::size_t width);

// (S - min S) / (max S - min S); a constant map becomes all zeros with the
// degenerate flag set. Requires a raw map.
SaliencyMap normalize_minmax(const SaliencyMap& map);

// tanh(gamma * S / max S) on a min-max map; degenerate input stays zero.
SaliencyMap tanh_rescale(const SaliencyMap& map, double gamma = kDefaultGamma);

// Upsamples each scaled map to (height, width) and takes the element-wise
// mean. The tap name becomes the '+'-joined list.
SaliencyMap aggregate_maps(const std::vector<SaliencyMap>& maps, std::size_t height,
                           std::size_t width);

// Splits "S4+S3" into {"S4", "S3"}.
std::vector<std::string> split_tap_set(const std::string& tap_set);

// Raw maps of one algorithm at each requested tap, w.r.t. `class_id`.
// Gradient CAMs share a single forward/backward pass.
std::map<std::string, SaliencyMap> compute_raw_maps(const Model& model, const Spectrogram& features,
                                                    CamKind kind,
                                                    const std::vector<std::string>& taps,
                                                    std::size_t class_id,
                                                    nn::ScoreKind score = nn::ScoreKind::kPosterior);

// minmax -> tanh -> upsample to the input grid.
SaliencyMap scaled_at_input(const SaliencyMap& raw, std::size_t height, std::size_t width,
                            double gamma = kDefaultGamma);

// Scaled, input-resolution map for a tap set such as "S4+S3", aggregating
// per-tap maps when the set has more than one member.
SaliencyMap tap_set_map(const std::map<std::string, SaliencyMap>& raw_maps,
                        const std::string& tap_set, std::size_t height, std::size_t width,
                        double gamma = kDefaultGamma);

}  // namespace camaudit

#endif  // CAMAUDIT_CAMS_CAMS_H_

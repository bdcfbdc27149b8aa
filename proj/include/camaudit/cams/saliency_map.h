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

#ifndef CAMAUDIT_CAMS_SALIENCY_MAP_H_
#define CAMAUDIT_CAMS_SALIENCY_MAP_H_

#include <cstddef>
#include <string>
#include <vector>

namespace camaudit {

enum class CamKind { kGradCam, kGradCamPP, kScoreCam, kLayerCam };
enum class NormState { kRaw, kMinMax, kScaled };

// "gradcam", "gradcampp", "scorecam", "layercam".
std::string to_string(CamKind kind);
CamKind parse_cam_kind(const std::string& name);
std::string to_string(NormState state);

// 2-D saliency grid (row-major, height rows) with provenance.
struct SaliencyMap {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> values;
  CamKind algorithm = CamKind::kGradCam;
  std::string tap;
  NormState state = NormState::kRaw;
  double gamma = 0.0;       // only meaningful once scaled
  bool degenerate = false;  // the map was constant before normalisation

  SaliencyMap() = default;
  SaliencyMap(std::size_t h, std::size_t w, double fill = 0.0)
      : height(h), width(w), values(h * w, fill) {}

  double& at(std::size_t i, std::size_t j) { return values[i * width + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * width + j]; }
};

}  // namespace camaudit

#endif  // CAMAUDIT_CAMS_SALIENCY_MAP_H_

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

#include "camaudit/cams/saliency_map.h"

#include <stdexcept>

namespace camaudit {

std::string to_string(CamKind kind) {
  switch (kind) {
    case CamKind::kGradCam: return "gradcam";
    case CamKind::kGradCamPP: return "gradcampp";
    case CamKind::kScoreCam: return "scorecam";
    case CamKind::kLayerCam: return "layercam";
  }
  return "?";
}

CamKind parse_cam_kind(const std::string& name) {
  for (CamKind k : {CamKind::kGradCam, CamKind::kGradCamPP, CamKind::kScoreCam, CamKind::kLayerCam}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown CAM '" + name +
                              "' (expected gradcam, gradcampp, scorecam or layercam)");
}

std::string to_string(NormState state) {
  switch (state) {
    case NormState::kRaw: return "raw";
    case NormState::kMinMax: return "minmax";
    case NormState::kScaled: return "scaled";
  }
  return "?";
}

}  // namespace camaudit

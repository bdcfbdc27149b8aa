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

#ifndef CAMAUDIT_EVAL_DI_AUDIT_H_
#define CAMAUDIT_EVAL_DI_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "camaudit/cams/cams.h"
#include "camaudit/eval/curves.h"

namespace camaudit {

struct DiAuditConfig {
  std::vector<CamKind> cams{CamKind::kGradCamPP, CamKind::kScoreCam, CamKind::kLayerCam};
  std::string tap_set = "S4";
  std::size_t steps = 50;
  double gamma = kDefaultGamma;
  std::size_t patch = 1;
  std::uint64_t seed = 0;  // random baseline
  bool baselines = true;   // add random and time-aligned orderings
};

struct DiEntry {
  std::string ordering;  // "cam", "random" or "time-aligned"
  std::string cam;       // algorithm name, or "none" for baselines
  std::string tap;       // tap set, or "none" for baselines
  Curve deletion;
  Curve insertion;
  double deletion_auc = 0.0;
  double insertion_auc = 0.0;

  // The cam name for CAM entries, the ordering otherwise.
  std::string label() const { return ordering == "cam" ? cam : ordering; }
};

struct DiAuditResult {
  std::size_t num_items = 0;
  std::size_t steps = 0;
  std::vector<DiEntry> entries;

  // Entry whose label() matches; throws when absent.
  const DiEntry& at(const std::string& label) const;
};

// Saliency is computed once per clean input, w.r.t. the item's label, and
// turned into an ordering with rank_bins.
DiAuditResult run_di_audit(const Model& model, const std::vector<EvalItem>& items,
                           const DiAuditConfig& config);

// Header "ordering,cam,tap,direction,auc,items", one row per entry and direction.
void write_auc_summary(std::ostream& out, const DiAuditResult& result);

// One "<prefix>curve_<label>_<direction>.csv" per entry and direction plus
// "<prefix>auc_summary.csv". Returns the written paths.
std::vector<std::filesystem::path> write_di_outputs(const std::filesystem::path& dir,
                                                    const DiAuditResult& result,
                                                    const std::string& prefix = {});

}  // namespace camaudit

#endif  // CAMAUDIT_EVAL_DI_AUDIT_H_

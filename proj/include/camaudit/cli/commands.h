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

#ifndef CAMAUDIT_CLI_COMMANDS_H_
#define CAMAUDIT_CLI_COMMANDS_H_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "camaudit/cli/run_config.h"
#include "camaudit/data/manifest.h"
#include "camaudit/eval/curves.h"
#include "camaudit/model/model.h"

namespace camaudit {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// gen:         <out>/manifest.txt plus utts/*.spg
// train:       checkpoint plus <out>/train_log.csv; fails below the held-out
//              accuracy threshold
// saliency:    <out>/saliency/utt<N>_<cam>_<taps>_scaled.pgm and raw CSVs
// audit-di:    <out>/di_<mode>/curve_*.csv and auc_summary.csv
// audit-local: <out>/localization.csv
int cmd_gen(const RunConfig& config, std::ostream& log);
int cmd_train(const RunConfig& config, std::ostream& log);
int cmd_saliency(const RunConfig& config, std::ostream& log);
int cmd_audit_di(const RunConfig& config, std::ostream& log);
int cmd_audit_local(const RunConfig& config, std::ostream& log);

// Validates, dispatches on config.subcommand and maps exceptions to exit
// statuses, printing the reason to `err`.
int run_command(const RunConfig& config, std::ostream& log, std::ostream& err);

// The first `per_speaker` training-split utterances of every speaker,
// VAD-trimmed and featurised, labelled with their speaker.
std::vector<EvalItem> single_speaker_items(const Model& model, const Corpus& corpus,
                                           std::size_t per_speaker,
                                           std::size_t heldout_per_speaker);

}  // namespace camaudit

#endif  // CAMAUDIT_CLI_COMMANDS_H_

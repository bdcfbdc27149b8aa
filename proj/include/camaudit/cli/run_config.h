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

#ifndef CAMAUDIT_CLI_RUN_CONFIG_H_
#define CAMAUDIT_CLI_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "camaudit/cams/saliency_map.h"

namespace camaudit {

// Usage or configuration problem; the CLI exits with status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a subcommand needs. The file form is one "key=value" per line;
// '#' starts a comment line and blank lines are ignored.
struct RunConfig {
  std::string subcommand;
  std::string manifest = "data/manifest.txt";
  std::string checkpoint = "model.ckpt";
  std::uint64_t seed = 20220;
  std::vector<CamKind> cams{CamKind::kGradCamPP, CamKind::kScoreCam, CamKind::kLayerCam};
  // Tap sets such as "S4" or "S4+S3". Empty selects the subcommand default.
  std::vector<std::string> taps;
  std::size_t steps = 50;
  double gamma = 5.0;
  std::string mode = "single";  // single | multi
  std::string out = "out";
  bool force = false;

  std::size_t epochs = 12;
  std::size_t num_speakers = 32;
  std::size_t utts_per_speaker = 30;
  std::size_t di_items_per_speaker = 7;
  std::size_t scenarios_per_speaker = 20;
  std::size_t patch = 1;
  std::vector<std::size_t> utterances{0};  // manifest rows for `saliency`

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline const std::vector<std::string> kSubcommands{"gen", "train", "saliency", "audit-di",
                                                   "audit-local"};

void write_run_config(std::ostream& out, const RunConfig& config);

// Applies every key found in `in` on top of `base`. Unknown keys, repeated
// keys and malformed values raise ConfigError naming the line.
RunConfig read_run_config(std::istream& in, RunConfig base = {});
RunConfig load_run_config(const std::string& path, RunConfig base = {});

// Sets one field from its textual form; used by the file parser and the CLI.
void set_field(RunConfig& config, const std::string& key, const std::string& value);

// Range and name checks shared by every subcommand.
void validate(const RunConfig& config);

}  // namespace camaudit

#endif  // CAMAUDIT_CLI_RUN_CONFIG_H_

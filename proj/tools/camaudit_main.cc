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

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "camaudit/cli/commands.h"
#include "camaudit/cli/run_config.h"

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

const std::vector<Flag> kValueFlags{
    {"--manifest", "manifest", "dataset manifest path"},
    {"--checkpoint", "checkpoint", "model checkpoint path"},
    {"--seed", "seed", "seed for data, training and audits"},
    {"--cam", "cams", "comma list of gradcam,gradcampp,scorecam,layercam"},
    {"--taps", "taps", "comma list of tap sets, e.g. S4,S4+S3"},
    {"--steps", "steps", "deletion/insertion steps"},
    {"--gamma", "gamma", "tanh rescaling factor (default 5)"},
    {"--mode", "mode", "single or multi"},
    {"--out", "out", "output directory"},
    {"--epochs", "epochs", "training epochs"},
    {"--utterances", "utterances", "manifest rows for saliency"},
    {"--num-speakers", "num_speakers", "speakers generated by gen"},
    {"--utts-per-speaker", "utts_per_speaker", "utterances per speaker generated by gen"},
    {"--di-items-per-speaker", "di_items_per_speaker", "single-speaker audit inputs per speaker"},
    {"--scenarios-per-speaker", "scenarios_per_speaker", "multi-speaker scenarios per target"},
    {"--patch", "patch", "deletion/insertion patch size in bins"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAM saliency toolkit for a ResNet-SE speaker classifier"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, bool> force;
  for (const auto& name : camaudit::kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value config file");
    for (const Flag& f : kValueFlags) sub->add_option(f.name, values[name][f.key], f.help);
    sub->add_flag("--force", force[name], "overwrite existing outputs");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? camaudit::kExitOk : camaudit::kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  camaudit::RunConfig config;
  try {
    if (!config_path.empty()) config = camaudit::load_run_config(config_path);
    config.subcommand = name;
    CLI::App* sub = app.get_subcommand(name);
    for (const Flag& f : kValueFlags) {
      if (sub->get_option(f.name)->count() > 0) camaudit::set_field(config, f.key, values[name][f.key]);
    }
    if (force[name]) config.force = true;
  } catch (const camaudit::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return camaudit::kExitUsage;
  }
  return camaudit::run_command(config, std::cout, std::cerr);
}

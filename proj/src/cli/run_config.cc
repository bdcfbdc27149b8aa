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

#include "camaudit/cli/run_config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "camaudit/cams/cams.h"

namespace camaudit {
namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) throw ConfigError("empty element in list '" + s + "'");
    items.push_back(item);
  }
  return items;
}

template <typename T>
std::string join(const std::vector<T>& items, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += fmt(items[i]);
  }
  return out;
}

template <typename T>
T parse_unsigned(const std::string& key, const std::string& v) {
  T value{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("bad value for " + key + ": '" + v + "'");
  }
  return value;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad value for " + key + ": '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("bad value for " + key + ": '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

void set_field(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "subcommand") {
    c.subcommand = v;
  } else if (key == "manifest") {
    c.manifest = v;
  } else if (key == "checkpoint") {
    c.checkpoint = v;
  } else if (key == "seed") {
    c.seed = parse_unsigned<std::uint64_t>(key, v);
  } else if (key == "cams") {
    c.cams.clear();
    for (const auto& name : split_list(v)) {
      try {
        c.cams.push_back(parse_cam_kind(name));
      } catch (const std::invalid_argument&) {
        throw ConfigError("unknown cam '" + name + "'; expected gradcam, gradcampp, scorecam or layercam");
      }
    }
  } else if (key == "taps") {
    c.taps = v.empty() ? std::vector<std::string>{} : split_list(v);
  } else if (key == "steps") {
    c.steps = parse_unsigned<std::size_t>(key, v);
  } else if (key == "gamma") {
    c.gamma = parse_double(key, v);
  } else if (key == "mode") {
    c.mode = v;
  } else if (key == "out") {
    c.out = v;
  } else if (key == "force") {
    c.force = parse_bool(key, v);
  } else if (key == "epochs") {
    c.epochs = parse_unsigned<std::size_t>(key, v);
  } else if (key == "num_speakers") {
    c.num_speakers = parse_unsigned<std::size_t>(key, v);
  } else if (key == "utts_per_speaker") {
    c.utts_per_speaker = parse_unsigned<std::size_t>(key, v);
  } else if (key == "di_items_per_speaker") {
    c.di_items_per_speaker = parse_unsigned<std::size_t>(key, v);
  } else if (key == "scenarios_per_speaker") {
    c.scenarios_per_speaker = parse_unsigned<std::size_t>(key, v);
  } else if (key == "patch") {
    c.patch = parse_unsigned<std::size_t>(key, v);
  } else if (key == "utterances") {
    c.utterances.clear();
    for (const auto& s : split_list(v)) c.utterances.push_back(parse_unsigned<std::size_t>(key, s));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void write_run_config(std::ostream& out, const RunConfig& c) {
  std::ostringstream gamma;
  gamma.precision(17);
  gamma << c.gamma;
  out << "subcommand=" << c.subcommand << '\n'
      << "manifest=" << c.manifest << '\n'
      << "checkpoint=" << c.checkpoint << '\n'
      << "seed=" << c.seed << '\n'
      << "cams=" << join(c.cams, [](CamKind k) { return to_string(k); }) << '\n'
      << "taps=" << join(c.taps, [](const std::string& s) { return s; }) << '\n'
      << "steps=" << c.steps << '\n'
      << "gamma=" << gamma.str() << '\n'
      << "mode=" << c.mode << '\n'
      << "out=" << c.out << '\n'
      << "force=" << (c.force ? "true" : "false") << '\n'
      << "epochs=" << c.epochs << '\n'
      << "num_speakers=" << c.num_speakers << '\n'
      << "utts_per_speaker=" << c.utts_per_speaker << '\n'
      << "di_items_per_speaker=" << c.di_items_per_speaker << '\n'
      << "scenarios_per_speaker=" << c.scenarios_per_speaker << '\n'
      << "patch=" << c.patch << '\n'
      << "utterances=" << join(c.utterances, [](std::size_t u) { return std::to_string(u); })
      << '\n';
}

RunConfig read_run_config(std::istream& in, RunConfig base) {
  std::set<std::string> seen;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) throw ConfigError(where + "repeated key '" + key + "'");
    try {
      set_field(base, key, trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return base;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  return read_run_config(in, std::move(base));
}

void validate(const RunConfig& c) {
  if (!c.subcommand.empty() &&
      std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
    throw ConfigError("unknown subcommand '" + c.subcommand + "'");
  }
  if (c.mode != "single" && c.mode != "multi") {
    throw ConfigError("mode must be single or multi, got '" + c.mode + "'");
  }
  if (c.steps == 0) throw ConfigError("steps must be at least 1");
  if (!(c.gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (c.cams.empty()) throw ConfigError("no cams selected");
  if (c.patch == 0) throw ConfigError("patch must be at least 1");
  if (c.epochs == 0) throw ConfigError("epochs must be at least 1");
  static const std::vector<std::string> known{"S1", "S2", "S3", "S4"};
  for (const auto& set : c.taps) {
    std::vector<std::string> members;
    try {
      members = split_tap_set(set);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    for (const auto& tap : members) {
      if (std::find(known.begin(), known.end(), tap) == known.end()) {
        throw ConfigError("unknown tap '" + tap + "'; expected S1, S2, S3 or S4");
      }
    }
  }
}

}  // namespace camaudit

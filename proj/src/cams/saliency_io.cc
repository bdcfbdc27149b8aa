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

#include "camaudit/cams/saliency_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace camaudit {

void write_pgm(std::ostream& out, const SaliencyMap& map) {
  out << "P5\n" << map.width << ' ' << map.height << "\n255\n";
  std::string row(map.width, '\0');
  for (std::size_t i = 0; i < map.height; ++i) {
    for (std::size_t j = 0; j < map.width; ++j) {
      const double v = std::clamp(map.at(i, j), 0.0, 1.0);
      row[j] = static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw std::runtime_error("failed to write PGM");
}

void write_map_csv(std::ostream& out, const SaliencyMap& map) {
  out << "row,col,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < map.height; ++i) {
    for (std::size_t j = 0; j < map.width; ++j) out << i << ',' << j << ',' << map.at(i, j) << '\n';
  }
  if (!out) throw std::runtime_error("failed to write saliency CSV");
}

std::string saliency_stem(const std::string& prefix, const SaliencyMap& map) {
  std::string tap = map.tap.empty() ? "input" : map.tap;
  std::replace(tap.begin(), tap.end(), '+', '-');
  return prefix + "_" + to_string(map.algorithm) + "_" + tap + "_" + to_string(map.state);
}

namespace {

template <typename Writer>
std::filesystem::path save_with(const std::filesystem::path& dir, const std::string& name,
                                Writer&& write) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write(out);
  return path;
}

}  // namespace

std::filesystem::path save_pgm(const std::filesystem::path& dir, const std::string& prefix,
                               const SaliencyMap& map) {
  return save_with(dir, saliency_stem(prefix, map) + ".pgm",
                   [&](std::ostream& out) { write_pgm(out, map); });
}

std::filesystem::path save_map_csv(const std::filesystem::path& dir, const std::string& prefix,
                                   const SaliencyMap& map) {
  return save_with(dir, saliency_stem(prefix, map) + ".csv",
                   [&](std::ostream& out) { write_map_csv(out, map); });
}

}  // namespace camaudit

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

#ifndef CAMAUDIT_CAMS_SALIENCY_IO_H_
#define CAMAUDIT_CAMS_SALIENCY_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "camaudit/cams/saliency_map.h"

namespace camaudit {

// Binary PGM (P5, maxval 255). Values are clamped to [0, 1], scaled by 255
// and rounded. Rows are frequency bins.
void write_pgm(std::ostream& out, const SaliencyMap& map);

// Header "row,col,value" with full-precision values.
void write_map_csv(std::ostream& out, const SaliencyMap& map);

// "<prefix>_<cam>_<tap>_<state>"; '+' in aggregated tap names becomes '-'.
std::string saliency_stem(const std::string& prefix, const SaliencyMap& map);

// Writes <dir>/<stem>.pgm for a scaled map.
std::filesystem::path save_pgm(const std::filesystem::path& dir, const std::string& prefix,
                               const SaliencyMap& map);
std::filesystem::path save_map_csv(const std::filesystem::path& dir, const std::string& prefix,
                                   const SaliencyMap& map);

}  // namespace camaudit

#endif  // CAMAUDIT_CAMS_SALIENCY_IO_H_

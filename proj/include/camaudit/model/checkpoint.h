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

#ifndef CAMAUDIT_MODEL_CHECKPOINT_H_
#define CAMAUDIT_MODEL_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "camaudit/model/model.h"

namespace camaudit {

// Raised for any checkpoint that cannot be loaded; what() names the reason.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Little-endian layout:
//   "CAMC" | u32 version | config | normaliser | u64 n | n x f64 params |
//   u64 FNV-1a checksum of everything before it.
std::vector<std::uint8_t> save_checkpoint(const Model& model);
Model load_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint_file(const Model& model, const std::filesystem::path& path);
Model load_checkpoint_file(const std::filesystem::path& path);

}  // namespace camaudit

#endif  // CAMAUDIT_MODEL_CHECKPOINT_H_

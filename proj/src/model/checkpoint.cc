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

#include "camaudit/model/checkpoint.h"

#include <fstream>

#include "camaudit/data/binary_io.h"

namespace camaudit {
namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'A', 'M', 'C'};
constexpr std::size_t kTrailer = 8;

}  // namespace

std::vector<std::uint8_t> save_checkpoint(const Model& model) {
  using namespace binio;
  std::vector<std::uint8_t> buf(std::begin(kMagic), std::end(kMagic));
  put_u32(buf, kCheckpointVersion);

  const ModelConfig& c = model.config();
  put_u32(buf, static_cast<std::uint32_t>(c.input_freq_bins));
  put_u32(buf, static_cast<std::uint32_t>(c.input_frames));
  put_u32(buf, static_cast<std::uint32_t>(c.base_channels));
  for (auto v : c.block_counts) put_u32(buf, static_cast<std::uint32_t>(v));
  for (auto v : c.strides) put_u32(buf, static_cast<std::uint32_t>(v));
  put_u32(buf, static_cast<std::uint32_t>(c.embedding_dim));
  put_u32(buf, static_cast<std::uint32_t>(c.num_classes));
  put_u32(buf, c.loss_kind == LossKind::kAmSoftmax ? 0 : 1);
  put_f64(buf, c.margin);
  put_f64(buf, c.scale);
  put_u64(buf, c.seed);

  const FeatureNormalizer& n = model.normalizer();
  put_f64(buf, n.log_offset());
  put_u32(buf, static_cast<std::uint32_t>(n.means().size()));
  for (double v : n.means()) put_f64(buf, v);
  for (double v : n.stddevs()) put_f64(buf, v);

  const auto params = model.network().parameters();
  put_u64(buf, model.network().num_parameter_values());
  for (const nn::Tensor* t : params) {
    for (double v : t->data()) put_f64(buf, v);
  }
  put_u64(buf, fnv1a64(buf.data(), buf.size()));
  return buf;
}

Model load_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof(kMagic) + 4 + kTrailer) {
    throw CheckpointError("checkpoint truncated: " + std::to_string(bytes.size()) + " bytes");
  }
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw CheckpointError("not a checkpoint (bad magic)");
  }
  binio::Reader header(bytes.data() + sizeof(kMagic), 4);
  const std::uint32_t version = header.u32();
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint format version " + std::to_string(version) +
                          " (this build reads version " + std::to_string(kCheckpointVersion) + ")");
  }
  const std::size_t body = bytes.size() - kTrailer;
  binio::Reader trailer(bytes.data() + body, kTrailer);
  if (trailer.u64() != binio::fnv1a64(bytes.data(), body)) {
    throw CheckpointError("checkpoint checksum mismatch (corrupted or truncated file)");
  }

  try {
    binio::Reader r(bytes.data() + sizeof(kMagic) + 4, body - sizeof(kMagic) - 4);
    ModelConfig c;
    c.input_freq_bins = r.u32();
    c.input_frames = r.u32();
    c.base_channels = r.u32();
    for (auto& v : c.block_counts) v = r.u32();
    for (auto& v : c.strides) v = r.u32();
    c.embedding_dim = r.u32();
    c.num_classes = r.u32();
    const std::uint32_t loss = r.u32();
    if (loss > 1) throw CheckpointError("unknown loss kind " + std::to_string(loss));
    c.loss_kind = loss == 0 ? LossKind::kAmSoftmax : LossKind::kSoftmax;
    c.margin = r.f64();
    c.scale = r.f64();
    c.seed = r.u64();

    const double log_offset = r.f64();
    const std::size_t bins = r.u32();
    std::vector<double> means(bins), stddevs(bins);
    for (double& v : means) v = r.f64();
    for (double& v : stddevs) v = r.f64();

    Model model = build_model(c);
    model.set_normalizer(FeatureNormalizer(log_offset, std::move(means), std::move(stddevs)));
    const std::uint64_t count = r.u64();
    if (count != model.network().num_parameter_values()) {
      throw CheckpointError("checkpoint holds " + std::to_string(count) +
                            " parameters, architecture needs " +
                            std::to_string(model.network().num_parameter_values()));
    }
    for (nn::Tensor* t : model.network().parameters()) {
      for (double& v : t->data()) v = r.f64();
    }
    if (r.remaining() != 0) throw CheckpointError("trailing bytes after parameter blob");
    return model;
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint_file(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  binio::write_all(out, save_checkpoint(model));
}

Model load_checkpoint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  return load_checkpoint(binio::read_all(in));
}

}  // namespace camaudit

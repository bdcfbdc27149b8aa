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

#include "camaudit/eval/di_audit.h"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "camaudit/data/datagen.h"

namespace camaudit {

const DiEntry& DiAuditResult::at(const std::string& label) const {
  for (const auto& e : entries) {
    if (e.label() == label) return e;
  }
  throw std::out_of_range("no deletion/insertion entry for " + label);
}

namespace {

DiEntry evaluate(const Model& model, const std::vector<EvalItem>& items,
                 const std::vector<BinOrdering>& orderings, std::size_t steps) {
  DiEntry e;
  e.deletion = deletion_curve(model, items, orderings, steps);
  e.insertion = insertion_curve(model, items, orderings, steps);
  e.deletion_auc = auc(e.deletion);
  e.insertion_auc = auc(e.insertion);
  return e;
}

}  // namespace

DiAuditResult run_di_audit(const Model& model, const std::vector<EvalItem>& items,
                           const DiAuditConfig& config) {
  if (items.empty()) throw std::invalid_argument("empty evaluation set");
  const auto taps = split_tap_set(config.tap_set);
  DiAuditResult result;
  result.num_items = items.size();
  result.steps = config.steps;

  for (CamKind kind : config.cams) {
    std::vector<BinOrdering> orderings;
    orderings.reserve(items.size());
    for (const auto& item : items) {
      const auto& f = item.features;
      const auto raw = compute_raw_maps(model, f, kind, taps, item.label);
      const auto map = tap_set_map(raw, config.tap_set, f.freq_bins, f.frames, config.gamma);
      orderings.push_back(rank_bins(map, config.patch));
    }
    DiEntry e = evaluate(model, items, orderings, config.steps);
    e.ordering = to_string(OrderingSource::kCam);
    e.cam = to_string(kind);
    e.tap = config.tap_set;
    result.entries.push_back(std::move(e));
  }

  if (config.baselines) {
    for (OrderingSource source : {OrderingSource::kRandom, OrderingSource::kTimeAligned}) {
      std::vector<BinOrdering> orderings;
      orderings.reserve(items.size());
      for (std::size_t n = 0; n < items.size(); ++n) {
        const auto& f = items[n].features;
        orderings.push_back(baseline_ordering(source, f.freq_bins, f.frames, mix_seed(config.seed, n)));
      }
      DiEntry e = evaluate(model, items, orderings, config.steps);
      e.ordering = to_string(source);
      e.cam = "none";
      e.tap = "none";
      result.entries.push_back(std::move(e));
    }
  }
  return result;
}

void write_auc_summary(std::ostream& out, const DiAuditResult& result) {
  out << "ordering,cam,tap,direction,auc,items\n";
  out.precision(17);
  for (const auto& e : result.entries) {
    out << e.ordering << ',' << e.cam << ',' << e.tap << ",deletion," << e.deletion_auc << ','
        << result.num_items << '\n';
    out << e.ordering << ',' << e.cam << ',' << e.tap << ",insertion," << e.insertion_auc << ','
        << result.num_items << '\n';
  }
}

std::vector<std::filesystem::path> write_di_outputs(const std::filesystem::path& dir,
                                                    const DiAuditResult& result,
                                                    const std::string& prefix) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    written.push_back(dir / name);
    std::ofstream out(written.back());
    if (!out) throw std::runtime_error("cannot write " + written.back().string());
    return out;
  };
  for (const auto& e : result.entries) {
    for (const Curve* c : {&e.deletion, &e.insertion}) {
      auto out = open(prefix + "curve_" + e.label() + "_" + to_string(c->direction) + ".csv");
      write_curve_csv(out, *c, e.ordering, e.cam, e.tap);
    }
  }
  auto out = open(prefix + "auc_summary.csv");
  write_auc_summary(out, result);
  return written;
}

}  // namespace camaudit

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


#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "camaudit/eval/curves.h"
#include "camaudit/eval/di_audit.h"
#include "camaudit/eval/ordering.h"
#include "test_util.h"

namespace camaudit {
namespace {

using testing::random_spectrogram;

SaliencyMap map_of(std::size_t h, std::size_t w, std::vector<double> values) {
  SaliencyMap m(h, w);
  m.values = std::move(values);
  return m;
}

TEST(RankBins, SortsDescendingWithRowMajorTies) {
  EXPECT_EQ(rank_bins(map_of(2, 2, {3, 1, 2, 0})).bins,
            (std::vector<Bin>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  const BinOrdering flat = rank_bins(SaliencyMap(2, 3, 0.4));
  EXPECT_EQ(flat.bins, (std::vector<Bin>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}));
  EXPECT_EQ(flat.source, OrderingSource::kCam);
}

TEST(RankBins, MatchesStableSortOracle) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> level(0, 5);
  for (int trial = 0; trial < 20; ++trial) {
    SaliencyMap m(5, 7);
    for (double& v : m.values) v = level(rng) / 5.0;
    std::vector<std::size_t> idx(m.values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return m.values[a] > m.values[b]; });
    const BinOrdering o = rank_bins(m);
    ASSERT_EQ(o.bins.size(), idx.size());
    for (std::size_t n = 0; n < idx.size(); ++n)
      EXPECT_EQ(o.bins[n], (Bin{idx[n] / 7, idx[n] % 7}));
    EXPECT_TRUE(is_permutation(o));
  }
}

TEST(RankBins, InvariantUnderScaling) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  SaliencyMap m(6, 8);
  for (double& v : m.values) v = u(rng);
  const SaliencyMap mm = normalize_minmax(m);
  EXPECT_EQ(rank_bins(m).bins, rank_bins(mm).bins);
  EXPECT_EQ(rank_bins(m).bins, rank_bins(tanh_rescale(mm)).bins);
}

TEST(RankBins, PatchesMoveTogether) {
  // 2x2 patches over a 4x4 map; the lower-right patch has the largest mean.
  SaliencyMap m(4, 4);
  m.at(2, 2) = 1.0;
  m.at(3, 3) = 1.0;
  m.at(0, 0) = 0.9;
  const BinOrdering o = rank_bins(m, 2);
  EXPECT_TRUE(is_permutation(o));
  EXPECT_EQ(std::vector<Bin>(o.bins.begin(), o.bins.begin() + 4),
            (std::vector<Bin>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}));
  EXPECT_EQ(o.bins[4], (Bin{0, 0}));
  EXPECT_TRUE(is_permutation(rank_bins(SaliencyMap(5, 7, 1.0), 3)));
}

TEST(Baselines, TimeAlignedIsFrameMajor) {
  const BinOrdering o = baseline_ordering(OrderingSource::kTimeAligned, 2, 3);
  EXPECT_EQ(o.bins, (std::vector<Bin>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(to_string(o.source), "time-aligned");
}

TEST(Baselines, RandomIsSeededPermutation) {
  const BinOrdering a = baseline_ordering(OrderingSource::kRandom, 40, 30, 7);
  EXPECT_EQ(a.bins, baseline_ordering(OrderingSource::kRandom, 40, 30, 7).bins);
  EXPECT_NE(a.bins, baseline_ordering(OrderingSource::kRandom, 40, 30, 8).bins);
  EXPECT_TRUE(is_permutation(a));
  EXPECT_THROW(baseline_ordering(OrderingSource::kCam, 2, 2), std::invalid_argument);
}

TEST(Baselines, PermutationCheckCatchesDuplicates) {
  BinOrdering o = baseline_ordering(OrderingSource::kTimeAligned, 2, 2);
  o.bins[1] = o.bins[0];
  EXPECT_FALSE(is_permutation(o));
  o.bins.pop_back();
  EXPECT_FALSE(is_permutation(o));
}

Model small_model() {
  ModelConfig c = ModelConfig::desk();
  c.base_channels = 2;
  c.num_classes = 4;
  c.embedding_dim = 8;
  c.input_frames = 20;
  c.loss_kind = LossKind::kSoftmax;
  c.seed = 5;
  return build_model(c);
}

struct Fixture {
  Model model = small_model();
  std::vector<EvalItem> items;
  std::vector<BinOrdering> orderings;
};

Fixture fixture(std::size_t count) {
  Fixture f;
  std::mt19937_64 rng(31);
  for (std::size_t n = 0; n < count; ++n) {
    Spectrogram x = random_spectrogram(40, 12 + n % 5, rng);
    const std::size_t label = n % 2 ? predict_top1(f.model, x).speaker : n % 4;
    f.orderings.push_back(baseline_ordering(OrderingSource::kRandom, x.freq_bins, x.frames, n));
    f.items.push_back({std::move(x), label});
  }
  return f;
}

double accuracy(const Model& model, const std::vector<EvalItem>& items, bool zeroed) {
  double hits = 0.0;
  for (const auto& item : items) {
    Spectrogram x = item.features;
    if (zeroed) std::fill(x.values.begin(), x.values.end(), 0.0);
    hits += predict_top1(model, x).speaker == item.label;
  }
  return hits / static_cast<double>(items.size());
}

TEST(Curves, GridAndEndpoints) {
  const Fixture f = fixture(8);
  const Curve del = deletion_curve(f.model, f.items, f.orderings, 4);
  EXPECT_EQ(del.xs, (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
  ASSERT_EQ(del.ys.size(), 5u);
  EXPECT_EQ(del.ys.front(), accuracy(f.model, f.items, false));
  EXPECT_EQ(del.ys.back(), accuracy(f.model, f.items, true));
  const Curve ins = insertion_curve(f.model, f.items, f.orderings, 4);
  EXPECT_EQ(ins.direction, Direction::kInsertion);
  EXPECT_EQ(ins.ys.front(), accuracy(f.model, f.items, true));
  EXPECT_EQ(ins.ys.back(), accuracy(f.model, f.items, false));
  for (double y : ins.ys) {
    EXPECT_GE(y, 0.0);
    EXPECT_LE(y, 1.0);
  }
}

TEST(Curves, InsertionIsReversedDeletion) {
  const Fixture f = fixture(10);
  std::vector<BinOrdering> flipped;
  for (const auto& o : f.orderings) flipped.push_back(reversed(o));
  for (std::size_t steps : {1u, 3u, 7u, 20u}) {
    const Curve ins = insertion_curve(f.model, f.items, f.orderings, steps);
    const Curve del = deletion_curve(f.model, f.items, flipped, steps);
    for (std::size_t i = 0; i <= steps; ++i) EXPECT_EQ(ins.ys[i], del.ys[steps - i]) << steps << " " << i;
  }
}

TEST(Curves, RejectsMismatches) {
  Fixture f = fixture(3);
  EXPECT_THROW(deletion_curve(f.model, f.items, f.orderings, 0), std::invalid_argument);
  EXPECT_THROW(deletion_curve(f.model, {}, {}, 4), std::invalid_argument);
  std::vector<BinOrdering> short_list(f.orderings.begin(), f.orderings.end() - 1);
  EXPECT_THROW(insertion_curve(f.model, f.items, short_list, 4), std::invalid_argument);
  f.orderings[0] = baseline_ordering(OrderingSource::kTimeAligned, 40, 99);
  EXPECT_THROW(deletion_curve(f.model, f.items, f.orderings, 4), std::invalid_argument);
}

double oracle_trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double area = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) area += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return area;
}

TEST(Auc, Examples) {
  Curve flat{{0, 0.5, 1}, {1, 1, 1}, Direction::kDeletion};
  EXPECT_DOUBLE_EQ(auc(flat), 1.0);
  Curve ramp{{0, 0.25, 0.5, 0.75, 1}, {0, 0.25, 0.5, 0.75, 1}, Direction::kInsertion};
  EXPECT_DOUBLE_EQ(auc(ramp), 0.5);
  EXPECT_THROW(auc(Curve{{0}, {1}, Direction::kDeletion}), std::invalid_argument);
}

TEST(Auc, RandomCurvesMatchOracleAndAreLinear) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t steps = 1 + trial % 30;
    Curve a, b, mean;
    for (std::size_t i = 0; i <= steps; ++i) {
      const double x = static_cast<double>(i) / steps;
      a.xs.push_back(x), b.xs.push_back(x), mean.xs.push_back(x);
      a.ys.push_back(u(rng));
      b.ys.push_back(u(rng));
      mean.ys.push_back(0.5 * (a.ys.back() + b.ys.back()));
    }
    EXPECT_NEAR(auc(a), oracle_trapezoid(a.xs, a.ys), 1e-12);
    EXPECT_NEAR(auc(mean), 0.5 * (auc(a) + auc(b)), 1e-12);
  }
}

TEST(CurveCsv, HeaderAndRows) {
  std::ostringstream out;
  write_curve_csv(out, Curve{{0, 1}, {1, 0.5}, Direction::kDeletion}, "cam", "layercam", "S4");
  EXPECT_EQ(out.str(),
            "fraction,accuracy,direction,ordering,cam,tap\n"
            "0,1,deletion,cam,layercam,S4\n"
            "1,0.5,deletion,cam,layercam,S4\n");
}

TEST(DiAudit, EntriesDeterminismAndSummary) {
  const Fixture f = fixture(4);
  DiAuditConfig config;
  config.cams = {CamKind::kGradCamPP, CamKind::kLayerCam};
  config.steps = 5;
  config.seed = 3;
  const DiAuditResult a = run_di_audit(f.model, f.items, config);
  ASSERT_EQ(a.entries.size(), 4u);
  EXPECT_EQ(a.at("layercam").tap, "S4");
  EXPECT_EQ(a.at("random").cam, "none");
  EXPECT_EQ(a.at("time-aligned").deletion.xs.size(), 6u);
  EXPECT_THROW(a.at("scorecam"), std::out_of_range);

  const DiAuditResult b = run_di_audit(f.model, f.items, config);
  std::ostringstream sa, sb;
  write_auc_summary(sa, a);
  write_auc_summary(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  std::istringstream lines(sa.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "ordering,cam,tap,direction,auc,items");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 8u);
}

}  // namespace
}  // namespace camaudit

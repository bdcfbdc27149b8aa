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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "camaudit/cli/commands.h"
#include "camaudit/cli/run_config.h"

namespace camaudit {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t line_count(const fs::path& path) {
  const std::string text = slurp(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(RunConfig, RoundTrip) {
  RunConfig c;
  c.subcommand = "audit-di";
  c.cams = {CamKind::kLayerCam, CamKind::kGradCam};
  c.taps = {"S4+S3", "S2"};
  c.steps = 7;
  c.gamma = 2.5;
  c.mode = "multi";
  c.force = true;
  c.utterances = {3, 9};
  std::stringstream text;
  write_run_config(text, c);
  EXPECT_EQ(read_run_config(text), c);
}

TEST(RunConfig, RejectsUnknownAndRepeatedKeys) {
  std::istringstream unknown("steps=4\nbogus=1\n");
  try {
    read_run_config(unknown);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream repeated("# comment\nsteps=4\nsteps=5\n");
  EXPECT_THROW(read_run_config(repeated), ConfigError);
  std::istringstream bad_cam("cams=gradcam,blurcam\n");
  EXPECT_THROW(read_run_config(bad_cam), ConfigError);
}

TEST(RunConfig, ValidateAndFlagsWin) {
  std::istringstream text("steps=9\ngamma=3\n");
  RunConfig c = read_run_config(text);
  set_field(c, "steps", "4");
  EXPECT_EQ(c.steps, 4u);
  EXPECT_EQ(c.gamma, 3.0);
  c.taps = {"S4+S7"};
  EXPECT_THROW(validate(c), ConfigError);
  c.taps = {};
  c.mode = "stereo";
  EXPECT_THROW(validate(c), ConfigError);
  c.mode = "single";
  c.gamma = 0.0;
  EXPECT_THROW(validate(c), ConfigError);
}

class Pipeline : public ::testing::Test {
 protected:
  static fs::path root() { return fs::temp_directory_path() / "camaudit_cli_test"; }

  static RunConfig base(const std::string& subcommand) {
    RunConfig c;
    c.subcommand = subcommand;
    c.num_speakers = 4;
    c.utts_per_speaker = 10;
    c.epochs = 2;
    c.manifest = (root() / "data" / "manifest.txt").string();
    c.checkpoint = (root() / "model.ckpt").string();
    c.out = (root() / "out").string();
    c.steps = 4;
    c.di_items_per_speaker = 2;
    c.scenarios_per_speaker = 1;
    c.seed = 5;
    return c;
  }

  static int run(RunConfig c) {
    std::ostringstream log, err;
    return run_command(c, log, err);
  }

  static void SetUpTestSuite() {
    fs::remove_all(root());
    RunConfig gen = base("gen");
    gen.out = (root() / "data").string();
    ASSERT_EQ(run(gen), kExitOk);
    const int trained = run(base("train"));
    ASSERT_TRUE(trained == kExitOk || trained == kExitFailure);
  }

  static void TearDownTestSuite() { fs::remove_all(root()); }
};

TEST_F(Pipeline, GenIsDeterministicAndGuarded) {
  RunConfig gen = base("gen");
  gen.out = (root() / "data2").string();
  ASSERT_EQ(run(gen), kExitOk);
  EXPECT_EQ(slurp(root() / "data" / "manifest.txt"), slurp(root() / "data2" / "manifest.txt"));
  EXPECT_EQ(run(gen), kExitUsage);
  gen.force = true;
  EXPECT_EQ(run(gen), kExitOk);
}

TEST_F(Pipeline, TrainWritesCheckpointAndLog) {
  EXPECT_TRUE(fs::is_regular_file(base("x").checkpoint));
  EXPECT_EQ(line_count(root() / "out" / "train_log.csv"), 3u);
}

TEST_F(Pipeline, MissingInputsFail) {
  RunConfig c = base("train");
  c.manifest = (root() / "nowhere" / "manifest.txt").string();
  EXPECT_EQ(run(c), kExitFailure);
  c = base("audit-di");
  c.checkpoint = (root() / "missing.ckpt").string();
  EXPECT_EQ(run(c), kExitFailure);
  c = base("saliency");
  c.taps = {"S9"};
  EXPECT_EQ(run(c), kExitUsage);
}

TEST_F(Pipeline, SaliencyFiles) {
  RunConfig c = base("saliency");
  c.out = (root() / "sal").string();
  c.taps = {"S4", "S4+S3"};
  ASSERT_EQ(run(c), kExitOk);
  const fs::path dir = root() / "sal" / "saliency";
  for (const char* cam : {"gradcampp", "scorecam", "layercam"}) {
    for (const char* tap : {"S4", "S4-S3"}) {
      const fs::path pgm = dir / (std::string("utt0_") + cam + "_" + tap + "_scaled.pgm");
      ASSERT_TRUE(fs::is_regular_file(pgm)) << pgm;
      EXPECT_EQ(slurp(pgm).substr(0, 14), "P5\n100 40\n255\n");
    }
    EXPECT_TRUE(fs::is_regular_file(dir / (std::string("utt0_") + cam + "_S3_raw.csv")));
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 12);
}

TEST_F(Pipeline, AuditDiOutputsAreDeterministic) {
  for (const char* mode : {"single", "multi"}) {
    RunConfig c = base("audit-di");
    c.mode = mode;
    c.out = (root() / "di_a").string();
    ASSERT_EQ(run(c), kExitOk);
    c.out = (root() / "di_b").string();
    ASSERT_EQ(run(c), kExitOk);
    const std::string sub = std::string("di_") + mode;
    const fs::path dir = root() / "di_a" / sub;
    std::size_t curves = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("curve_", 0) == 0) ++curves;
      EXPECT_EQ(slurp(entry.path()), slurp(root() / "di_b" / sub / name)) << name;
    }
    EXPECT_EQ(curves, 10u);
    EXPECT_EQ(line_count(dir / "auc_summary.csv"), 11u);
  }
}

TEST_F(Pipeline, AuditLocalTable) {
  RunConfig c = base("audit-local");
  c.cams = {CamKind::kLayerCam, CamKind::kGradCamPP};
  c.out = (root() / "loc_a").string();
  ASSERT_EQ(run(c), kExitOk);
  c.out = (root() / "loc_b").string();
  ASSERT_EQ(run(c), kExitOk);
  const fs::path csv = root() / "loc_a" / "localization.csv";
  EXPECT_EQ(slurp(csv), slurp(root() / "loc_b" / "localization.csv"));
  EXPECT_EQ(line_count(csv), 10u);
  std::istringstream lines(slurp(csv));
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 8);
}

}  // namespace
}  // namespace camaudit

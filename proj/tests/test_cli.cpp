// Copyright 2026 The traversim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "traversim/cli.hpp"
#include "traversim/fan_plot.hpp"
#include "traversim/map_io.hpp"
#include "traversim/metrics.hpp"
#include "traversim/traverse.hpp"

using namespace traversim;

namespace
{

struct run_cli
{
  int code;
  std::string out;
  std::string err;
};

run_cli run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string presets_dir() { return (test::source_dir() / "presets").string(); }

}  // namespace

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"dump-actions", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"simulate", "--out", "x.csv"}).code, cli::kUsage);  // --map is required
  const run_cli help = run({"--help"});
  EXPECT_EQ(help.code, cli::kOk);
  EXPECT_NE(help.out.find("plot-fan"), std::string::npos);
  const run_cli plot_help = run({"plot-fan", "--help"});
  EXPECT_NE(plot_help.out.find("0.25 <= p <= 0.5"), std::string::npos);
}

TEST(Cli, DumpActions)
{
  const run_cli r = run({"dump-actions"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3043);
  EXPECT_NE(r.out.find("\n3041 340 0.75 0.75\n"), std::string::npos);
}

TEST(Cli, GenMapsDeterministic)
{
  test::TempDir a("gen_a"), b("gen_b");
  const std::vector<std::string> common = {"gen-maps", "--n", "3", "--preset", "hills", "--seed", "5",
                                           "--presets-dir", presets_dir()};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.path().string(), "--workers", "1"});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.path().string(), "--workers", "3"});
  ASSERT_EQ(run(args_a).code, 0);
  ASSERT_EQ(run(args_b).code, 0);
  for (const char * f : {"map_00000.emap", "map_00001.emap", "map_00002.emap", "manifest.txt"}) {
    EXPECT_EQ(test::read_file(a / f), test::read_file(b / f)) << f;
  }
  EXPECT_NE(test::read_file(a / "map_00000.emap"), test::read_file(a / "map_00001.emap"));
  EXPECT_EQ(read_emap(a / "map_00000.emap").side_cells(), 129);
}

TEST(Cli, GenMapsEdgeCases)
{
  test::TempDir dir("gen_edge");
  const run_cli zero = run({"gen-maps", "--n", "0", "--preset", "flat", "--out", dir.path().string(),
                        "--presets-dir", presets_dir()});
  EXPECT_EQ(zero.code, 0);
  const std::string manifest = test::read_file(dir / "manifest.txt");
  EXPECT_NE(manifest.find("n: 0"), std::string::npos);
  EXPECT_EQ(manifest.find(".emap"), std::string::npos);
  const run_cli unknown = run({"gen-maps", "--preset", "nope", "--out", dir.path().string(),
                           "--presets-dir", presets_dir()});
  EXPECT_EQ(unknown.code, cli::kUsage);
  EXPECT_NE(unknown.err.find("hills"), std::string::npos);
}

TEST(Cli, GenMapsHonorsEnvironmentPresets)
{
  test::TempDir presets("env_presets"), out("env_out");
  std::filesystem::copy_file(test::source_dir() / "presets" / "flat.cfg", presets / "plateau.cfg");
  ::setenv("TRAVERSE_SIM_PRESETS", presets.path().c_str(), 1);
  const run_cli r = run({"gen-maps", "--n", "1", "--preset", "plateau", "--out", out.path().string()});
  ::unsetenv("TRAVERSE_SIM_PRESETS");
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, SimulateFlatAndTilted)
{
  test::TempDir dir("sim");
  write_emap(dir / "flat.emap", ElevationMap(129, 0.0625));
  auto tilted = test::tilted_map(40.0);
  tilted.quantize_to_float();
  write_emap(dir / "tilt.emap", tilted);

  const run_cli flat = run({"simulate", "--map", (dir / "flat.emap").string(), "--out",
                        (dir / "flat.csv").string(), "--map-id", "4"});
  ASSERT_EQ(flat.code, 0) << flat.err;
  auto rows = read_labels_csv(dir / "flat.csv");
  ASSERT_EQ(rows.size(), 3042u);
  for (const auto & r : rows) {
    EXPECT_EQ(r.map_id, 4u);
    EXPECT_FALSE(r.label.any());
    EXPECT_TRUE(r.valid);
  }
  const run_cli tilt = run({"simulate", "--map", (dir / "tilt.emap").string(), "--out",
                        (dir / "tilt.csv").string(), "--workers", "2"});
  ASSERT_EQ(tilt.code, 0);
  rows = read_labels_csv(dir / "tilt.csv");
  for (const auto & r : rows) EXPECT_TRUE(r.label.tilt);
  EXPECT_NE(tilt.out.find("tilt=3042"), std::string::npos);
}

TEST(Cli, SimulateTextGridAndErrors)
{
  test::TempDir dir("sim_err");
  write_text_grid(dir / "flat.txt", ElevationMap(65, 0.125));
  EXPECT_EQ(run({"simulate", "--map", (dir / "flat.txt").string(), "--format", "text", "--out",
                 (dir / "o.csv").string()}).code, 0);
  EXPECT_EQ(run({"simulate", "--map", (dir / "missing.emap").string(), "--out",
                 (dir / "o.csv").string()}).code, cli::kIo);
  test::write_file(dir / "bad.emap", "EMAP\x01");
  EXPECT_EQ(run({"simulate", "--map", (dir / "bad.emap").string(), "--out",
                 (dir / "o.csv").string()}).code, cli::kIo);
  EXPECT_EQ(run({"simulate", "--map", (dir / "flat.txt").string(), "--format", "png", "--out",
                 (dir / "o.csv").string()}).code, cli::kUsage);
  test::write_file(dir / "robot.cfg", "wheelbase = 1\n");
  EXPECT_EQ(run({"simulate", "--map", (dir / "flat.txt").string(), "--format", "text",
                 "--robot-config", (dir / "robot.cfg").string(), "--out", (dir / "o.csv").string()}).code,
    cli::kUsage);
}

TEST(Cli, BuildDatasetDeterministic)
{
  test::TempDir a("bd_a"), b("bd_b");
  auto args = [&](const test::TempDir & d, const char * workers) {
    return std::vector<std::string>{"build-dataset", "--n-maps", "3", "--presets", "ridges,hills",
      "--presets-dir", presets_dir(), "--split", "0.34,0.33,0.33", "--max-samples-per-split", "12",
      "--shard-size", "5", "--seed", "11", "--out", d.path().string(), "--workers", workers};
  };
  const run_cli ra = run(args(a, "1"));
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(run(args(b, "3")).code, 0);
  EXPECT_NE(ra.out.find("maps=3"), std::string::npos);
  std::size_t files = 0;
  for (const auto & entry : std::filesystem::recursive_directory_iterator(a.path())) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), a.path());
    EXPECT_EQ(test::read_file(entry.path()), test::read_file(b.path() / rel)) << rel;
    ++files;
  }
  // manifest, 4 label files, 3 maps, shards
  EXPECT_GT(files, 8u);
  EXPECT_TRUE(std::filesystem::exists(a / "shards" / "shard_train_00000.sbt"));
  EXPECT_EQ(run({"build-dataset", "--split", "0.5,0.5", "--out", a.path().string()}).code, cli::kUsage);
  EXPECT_EQ(run({"build-dataset", "--split", "0.5,0.6,0.1", "--n-maps", "1", "--out",
                 a.path().string()}).code, cli::kUsage);
}

TEST(Cli, EvaluateReproducesCounts)
{
  test::TempDir dir("eval");
  // Per event: tp, fp, tn, fn of the transfer table; the three events share a sample stream.
  const std::uint64_t counts[3][4] = {{48, 811, 132880, 109}, {436, 521, 132622, 269}, {0, 113, 133735, 0}};
  const std::size_t n = 133848;
  std::ofstream labels(dir / "labels.csv"), preds(dir / "pred.csv");
  write_label_header(labels);
  write_predictions_header(preds);
  for (std::size_t i = 0; i < n; ++i) {
    bool truth[3], guess[3];
    for (int e = 0; e < 3; ++e) {
      const auto * c = counts[e];
      if (i < c[0]) { truth[e] = true; guess[e] = true; }
      else if (i < c[0] + c[1]) { truth[e] = false; guess[e] = true; }
      else if (i < c[0] + c[1] + c[2]) { truth[e] = false; guess[e] = false; }
      else { truth[e] = true; guess[e] = false; }
    }
    const auto map_id = static_cast<std::uint32_t>(i / 3042), traj = static_cast<std::uint32_t>(i % 3042);
    write_label_row(labels, LabelRow{map_id, traj, {truth[0], truth[1], truth[2]}, true});
    write_prediction_row(preds, PredictionRow{map_id, traj, {guess[0] ? 0.9 : 0.1, guess[1] ? 0.9 : 0.1,
                                                            guess[2] ? 0.9 : 0.1}});
  }
  labels.close();
  preds.close();
  const run_cli r = run({"evaluate", "--pred", (dir / "pred.csv").string(), "--labels",
                     (dir / "labels.csv").string(), "--out", (dir / "report.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string report = test::read_file(dir / "report.txt");
  EXPECT_NE(report.find("step          0.993    0.306    0.056    0.094"), std::string::npos) << report;
  EXPECT_NE(report.find("obstacle      0.994    0.618    0.456    0.525"), std::string::npos);
  EXPECT_NE(report.find("tilt          0.999        -        -        -"), std::string::npos);
  EXPECT_NE(report.find("overall       0.995    0.561    0.251    0.347"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.csv"));
}

TEST(Cli, EvaluateKeyMismatch)
{
  test::TempDir dir("eval_bad");
  test::write_file(dir / "labels.csv", "map_id,traj_id,step,obstacle,tilt,valid\n0,0,0,0,0,1\n0,1,1,0,0,1\n");
  test::write_file(dir / "pred.csv", "map_id,traj_id,p_step,p_obstacle,p_tilt\n0,0,0,0,0\n0,2,1,0,0\n");
  const run_cli r = run({"evaluate", "--pred", (dir / "pred.csv").string(), "--labels",
                     (dir / "labels.csv").string(), "--out", (dir / "r.txt").string()});
  EXPECT_EQ(r.code, cli::kConsistency);
  EXPECT_EQ(run({"evaluate", "--pred", (dir / "pred.csv").string(), "--labels",
                 (dir / "labels.csv").string(), "--out", (dir / "r.txt").string(), "--threshold", "2"}).code,
    cli::kUsage);
}

TEST(Cli, PlotFan)
{
  test::TempDir dir("plot");
  {
    std::ofstream labels(dir / "labels.csv");
    write_label_header(labels);
    for (std::uint32_t t = 0; t < 3042; ++t) write_label_row(labels, LabelRow{2, t, {}, true});
  }
  write_emap(dir / "m.emap", ElevationMap(129, 0.0625));
  const std::string prefix = (dir / "out" / "fan").string();
  const run_cli r = run({"plot-fan", "--input", (dir / "labels.csv").string(), "--map",
                     (dir / "m.emap").string(), "--out", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  const Image img = read_ppm(prefix + "_composite.ppm");
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Rgb c = img.get(x, y);
      ASSERT_TRUE(c == band_color(RiskBand::Green) || (c.r == c.g && c.g == c.b)) << x << "," << y;
    }
  }
  for (const char * e : {"_step.ppm", "_obstacle.ppm", "_tilt.ppm"}) {
    EXPECT_TRUE(std::filesystem::exists(prefix + e));
  }

  {
    std::ofstream preds(dir / "short.csv");
    write_predictions_header(preds);
    for (std::uint32_t t = 0; t < 100; ++t) write_prediction_row(preds, PredictionRow{0, t, {0.3, 0.3, 0.3}});
  }
  EXPECT_EQ(run({"plot-fan", "--input", (dir / "short.csv").string(), "--out", prefix}).code,
    cli::kConsistency);
  EXPECT_EQ(run({"plot-fan", "--input", (dir / "labels.csv").string(), "--map-id", "7", "--out", prefix}).code,
    cli::kConsistency);
}

TEST(Cli, ImportMap)
{
  test::TempDir dir("import");
  write_text_grid(dir / "g.txt", test::map_from([](double x, double y) { return x - y; }, 65, 0.125));
  const run_cli r = run({"import-map", "--in", (dir / "g.txt").string(), "--out", (dir / "g.emap").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("resampled: true"), std::string::npos);
  const ElevationMap m = read_emap(dir / "g.emap");
  EXPECT_EQ(m.side_cells(), 129);
  EXPECT_NEAR(m.at(0, 0), -8.0, 1e-6);
  test::write_file(dir / "ragged.txt", "1 2\n3\n");
  EXPECT_EQ(run({"import-map", "--in", (dir / "ragged.txt").string(), "--out", (dir / "x.emap").string()}).code,
    cli::kIo);
}

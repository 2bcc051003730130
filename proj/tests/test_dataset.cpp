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
#include <set>

#include "test_util.hpp"
#include "traversim/dataset.hpp"
#include "traversim/errors.hpp"
#include "traversim/sbt_io.hpp"
#include "traversim/traverse.hpp"

using namespace traversim;

namespace
{

TerrainPreset preset(const std::string & name)
{
  return find_preset(test::source_dir() / "presets", name);
}

DatasetOptions small_options(const std::vector<std::string> & presets, int n_maps)
{
  DatasetOptions o;
  o.n_maps = n_maps;
  for (const auto & p : presets) o.presets.push_back(preset(p));
  o.workers = 1;
  return o;
}

std::size_t count_lines(const std::filesystem::path & p)
{
  const std::string s = test::read_file(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(SplitRatios, Validation)
{
  EXPECT_NO_THROW(SplitRatios{}.validate());
  EXPECT_THROW((SplitRatios{0.9, 0.2, 0.0}.validate()), InvalidRatios);
  EXPECT_THROW((SplitRatios{1.1, -0.1, 0.0}.validate()), InvalidRatios);
  EXPECT_NO_THROW((SplitRatios{1.0, 0.0, 0.0}.validate()));
}

TEST(MapSeed, DeterministicAndDistinct)
{
  std::set<std::int64_t> seen;
  for (std::uint32_t i = 0; i < 1000; ++i) {
    const auto s = map_seed(42, i);
    EXPECT_EQ(s, map_seed(42, i));
    EXPECT_GE(s, 0);
    seen.insert(s);
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(map_seed(1, 0), map_seed(2, 0));
}

TEST(Augment, FourRotations)
{
  auto m = test::map_from([](double x, double y) { return x + 2 * y; });
  const auto rots = augment_rotations(m);
  EXPECT_EQ(rots[0], m);
  EXPECT_EQ(rots[2], m.rotated_quarter_turns(2));
  std::size_t total = 0;
  for (int i = 0; i < 645; ++i) total += rots.size();
  EXPECT_EQ(total, 2580u);
}

TEST(BuildDataset, FlatMapsKeepSafeFloor)
{
  test::TempDir dir("ds_flat");
  auto o = small_options({"flat"}, 10);
  o.write_tensors = false;
  const auto m = build_dataset(o, dir.path());
  EXPECT_EQ(m.population_failure(), 0u);
  EXPECT_EQ(m.population_safe(), 10u * 3042);
  EXPECT_EQ(m.splits[0].maps, 9u);
  EXPECT_EQ(m.splits[0].exported_failure, 0u);
  EXPECT_EQ(m.splits[0].exported_safe, o.min_safe);
  EXPECT_EQ(count_lines(dir / "labels_train.csv"), o.min_safe + 1);
  EXPECT_EQ(count_lines(dir / "labels_all.csv"), 10u * 3042 + 1);
  EXPECT_TRUE(std::filesystem::exists(dir / "maps" / "map_00009.emap"));
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.txt"));
}

TEST(BuildDataset, SplitSizesByMap)
{
  test::TempDir dir("ds_split");
  auto o = small_options({"flat"}, 100);
  o.write_tensors = false;
  o.write_maps = false;
  const auto m = build_dataset(o, dir.path());
  EXPECT_EQ(m.splits[0].maps, 90u);
  EXPECT_EQ(m.splits[1].maps, 8u);
  EXPECT_EQ(m.splits[2].maps, 2u);
  // Test keeps every trajectory of its maps.
  EXPECT_EQ(m.splits[2].exported_safe, 2u * 3042);
}

TEST(BuildDataset, BalancingCapsSafeSamples)
{
  test::TempDir dir("ds_bal");
  auto o = small_options({"hills", "ridges"}, 12);
  o.write_tensors = false;
  o.min_safe = 0;
  const auto m = build_dataset(o, dir.path());
  const auto & train = m.splits[0];
  ASSERT_GT(train.population_failure, 0u);
  EXPECT_EQ(train.exported_failure, train.population_failure);
  EXPECT_LE(train.exported_safe, static_cast<std::size_t>(std::ceil(2.0 * train.exported_failure)));
  EXPECT_EQ(train.exported_safe, std::min(train.population_safe, 2 * train.exported_failure));
  const auto labels = read_labels_csv(dir / "labels_train.csv");
  EXPECT_EQ(labels.size(), train.exported_safe + train.exported_failure);
  EXPECT_TRUE(std::is_sorted(labels.begin(), labels.end(), [](const LabelRow & a, const LabelRow & b) {
    return a.map_id != b.map_id ? a.map_id < b.map_id : a.traj_id < b.traj_id;
  }));
}

TEST(BuildDataset, NoBalancePassesPopulationThrough)
{
  test::TempDir dir("ds_nobal");
  auto o = small_options({"hills", "ridges"}, 6);
  o.write_tensors = false;
  o.balance = false;
  const auto m = build_dataset(o, dir.path());
  for (const auto & s : m.splits) {
    EXPECT_EQ(s.exported_safe, s.population_safe);
    EXPECT_EQ(s.exported_failure, s.population_failure);
  }
}

TEST(BuildDataset, ShardsMatchLabels)
{
  test::TempDir dir("ds_shards");
  auto o = small_options({"ridges"}, 4);
  o.ratios = SplitRatios{0.5, 0.25, 0.25};
  o.max_samples_per_split = 40;
  o.shard_size = 16;
  const auto m = build_dataset(o, dir.path());
  std::size_t total = 0;
  for (const auto & sh : m.shards) {
    EXPECT_LE(sh.samples, 16u);
    const auto header = read_sbt_header(dir / "shards" / sh.file);
    EXPECT_EQ(header.sample_count, sh.samples);
    total += sh.samples;
  }
  const auto train = read_labels_csv(dir / "labels_train.csv");
  ASSERT_EQ(train.size(), 40u);
  std::vector<SampleTensor> samples;
  for (const auto & sh : m.shards) {
    if (sh.split != Split::Train) continue;
    auto part = read_sbt(dir / "shards" / sh.file);
    samples.insert(samples.end(), part.begin(), part.end());
  }
  ASSERT_EQ(samples.size(), train.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EXPECT_EQ(samples[i].map_id, train[i].map_id);
    EXPECT_EQ(samples[i].traj_id, train[i].traj_id);
    EXPECT_EQ(samples[i].label, train[i].label);
  }
  EXPECT_EQ(total, 120u);
  EXPECT_TRUE(std::filesystem::exists(dir / "shards" / "shard_train_00002.sbt"));
}

TEST(BuildDataset, Validation)
{
  test::TempDir dir("ds_bad");
  auto o = small_options({"flat"}, 1);
  o.ratios = SplitRatios{0.5, 0.5, 0.5};
  EXPECT_THROW(build_dataset(o, dir.path()), InvalidRatios);
  o = small_options({}, 2);
  EXPECT_THROW(build_dataset(o, dir.path()), InvalidConfig);
}

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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "traversim/action_space.hpp"
#include "traversim/elevation_map.hpp"
#include "traversim/raster.hpp"
#include "traversim/robot.hpp"
#include "traversim/terrain.hpp"

namespace traversim
{

enum class Split : std::uint8_t { Train = 0, Val = 1, Test = 2 };
inline constexpr std::array<const char *, 3> kSplitNames = {"train", "val", "test"};

struct SplitRatios
{
  double train = 0.90;
  double val = 0.08;
  double test = 0.02;

  /// Throws InvalidRatios unless all are in [0, 1] and they sum to 1 (±1e-9).
  void validate() const;
};

struct DatasetOptions
{
  int n_maps = 500;
  std::vector<TerrainPreset> presets;  ///< assigned round-robin by map index
  RobotConfig robot;
  ActionSpaceConfig actions;
  RasterConfig raster;
  SplitRatios ratios;
  bool balance = true;
  /// Upper bound on safe:failure in balanced splits.
  double balance_cap = 2.0;
  /// Safe samples kept per balanced split even when it has no failures.
  std::size_t min_safe = 256;
  /// Uniform random cap applied after balancing; 0 disables it.
  std::size_t max_samples_per_split = 0;
  bool write_tensors = true;
  bool write_maps = true;
  std::size_t shard_size = 4096;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

struct MapRecord
{
  std::uint32_t map_id = 0;
  std::string preset;
  std::int64_t seed = 0;
  Split split = Split::Train;
};

struct ShardRecord
{
  std::string file;
  Split split = Split::Train;
  std::uint32_t samples = 0;
};

struct SplitStats
{
  std::size_t maps = 0;
  std::size_t invalid = 0;
  /// Valid (map, trajectory) samples before balancing.
  std::size_t population_safe = 0;
  std::size_t population_failure = 0;
  std::size_t exported_safe = 0;
  std::size_t exported_failure = 0;
  std::array<std::size_t, 3> exported_events{};  ///< step, obstacle, tilt
};

struct DatasetManifest
{
  int format_version = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> presets;
  std::size_t trajectories_per_map = 0;
  bool balance = true;
  double balance_cap = 2.0;
  std::size_t min_safe = 0;
  std::size_t max_samples_per_split = 0;
  bool tensors = true;
  std::vector<MapRecord> maps;
  std::array<SplitStats, 3> splits;
  std::vector<ShardRecord> shards;

  std::size_t population_safe() const;
  std::size_t population_failure() const;
};

/// Seed of map `index` under master seed `master`; the three noise fields
/// then use seed + 0/1/2. Kept below 2^62 so the offsets cannot overflow.
std::int64_t map_seed(std::uint64_t master, std::uint32_t index);

/// Generates the map for one dataset entry, rounded to float precision so the
/// stored EMAP file reproduces it exactly.
ElevationMap generate_preset_map(const TerrainPreset & preset, std::int64_t seed,
  unsigned workers = 1);

/// Generate → simulate → split by map → balance → rasterize into `out_dir`:
///   manifest.txt, labels_all.csv, labels_{split}.csv, maps/map_NNNNN.emap,
///   shards/shard_{split}_NNNNN.sbt
/// Output bytes depend only on the options, never on the worker count.
DatasetManifest build_dataset(const DatasetOptions & opts, const std::filesystem::path & out_dir);

void write_manifest(std::ostream & out, const DatasetManifest & manifest);

/// Original map plus its 90°, 180° and 270° counter-clockwise rotations.
std::array<ElevationMap, 4> augment_rotations(const ElevationMap & map);

}  // namespace traversim

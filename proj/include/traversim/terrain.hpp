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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "traversim/elevation_map.hpp"

namespace traversim
{

class KeyValueConfig;

/// Shaping parameters of the mountain/plain/blend terrain model.
///
/// Each of the three fields is `noise2d(x * alpha, y * alpha) * beta + gamma`
/// evaluated at world coordinates in meters. The plain field is additionally
/// raised to `delta`, and the blend field is squashed to [0, 1] by `intrp`
/// with thresholds d < u.
struct TerrainParams
{
  double alpha_m = 0.5, beta_m = 0.5, gamma_m = 0.0;
  double alpha_p = 0.5, beta_p = 0.1, gamma_p = 0.1;
  double delta = 1.0;
  double alpha_w = 0.25, beta_w = 1.0, gamma_w = 0.0;
  double u = 0.5, d = -0.5;
  std::int64_t seed_m = 0, seed_p = 1, seed_w = 2;

  /// When set, a negative plain base raises NegativeBase instead of being clamped to 0.
  bool strict_plain_base = false;

  /// Throws InvalidParams when delta is outside [0, 1], d >= u, or any beta is negative.
  void validate() const;

  /// Assigns seed_m/p/w = master + 0/1/2, or master for all three when `shared`.
  void set_seeds(std::int64_t master, bool shared = false);
};

/// A named parameter set loaded from a preset file.
struct TerrainPreset
{
  std::string name;
  TerrainParams params;
  /// Use one seed for all three noise fields.
  bool shared_seed = false;
};

/// 1 above u, 0 below d, linear in between.
double intrp(double v, double u, double d);

/// Deterministic map generation; rows are distributed over `workers` threads
/// (0 = hardware concurrency) with identical output for any worker count.
ElevationMap generate_map(const TerrainParams & params, int side_cells = kDefaultSideCells,
  double cell_size = kDefaultCellSize, double origin_x = 0.0, double origin_y = 0.0,
  unsigned workers = 1);

TerrainPreset preset_from_config(const std::string & name, const KeyValueConfig & cfg);
TerrainPreset load_preset(const std::filesystem::path & file);

/// Directory searched for `<name>.cfg` presets: $TRAVERSE_SIM_PRESETS if set,
/// otherwise the directory shipped with the sources.
std::filesystem::path preset_directory();

/// Sorted preset names available in `dir`.
std::vector<std::string> list_presets(const std::filesystem::path & dir);

/// Names listed in `dir/DEFAULT` (one per line), used when no presets are requested.
std::vector<std::string> default_preset_names(const std::filesystem::path & dir);

/// Throws InvalidConfig listing the available presets when `name` is unknown.
TerrainPreset find_preset(const std::filesystem::path & dir, const std::string & name);

}  // namespace traversim

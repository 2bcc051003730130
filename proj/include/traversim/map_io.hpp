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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "traversim/elevation_map.hpp"

namespace traversim
{

// EMAP v1 layout (little-endian):
//   "EMAP" | u16 version=1 | u16 side_cells | f32 cell_size | f64 origin_x | f64 origin_y
//   | side_cells² f32 elevations, row-major, row 0 at the top (largest y).

void write_emap(std::ostream & out, const ElevationMap & map);
void write_emap(const std::filesystem::path & path, const ElevationMap & map);
ElevationMap read_emap(std::istream & in);
ElevationMap read_emap(const std::filesystem::path & path);

/// Plain-text grid: one row per line (top row first), space-separated decimals.
/// Written at full double precision so a read restores identical values.
void write_text_grid(const std::filesystem::path & path, const ElevationMap & map);

/// Reads a square text grid spanning `extent` meters, centered on the origin.
/// Throws ParseError on malformed numbers and NonSquareGrid on ragged or
/// non-square input.
ElevationMap read_text_grid(std::istream & in, double extent = 8.0);
ElevationMap read_text_grid(const std::filesystem::path & path, double extent = 8.0);

enum class MapFormat { Emap, Text };

/// Parses "emap" or "text"; throws InvalidConfig otherwise.
MapFormat parse_map_format(const std::string & name);

struct ImportedMap
{
  ElevationMap map;
  std::string source;     ///< path the map was read from
  int source_side = 0;    ///< side length before resampling
  bool resampled = false;
};

/// Reads a map in either format and bilinearly resamples it to `side_cells`
/// when the stored grid differs.
ImportedMap import_map(const std::filesystem::path & path, MapFormat format,
  int side_cells = kDefaultSideCells, double text_extent = 8.0);

}  // namespace traversim

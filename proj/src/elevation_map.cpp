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

#include "traversim/elevation_map.hpp"

#include <cmath>
#include <string>

#include "traversim/errors.hpp"

namespace traversim
{

ElevationMap::ElevationMap(int side_cells, double cell_size, double origin_x, double origin_y,
  double fill)
: ElevationMap(side_cells, cell_size, origin_x, origin_y,
    std::vector<double>(side_cells > 0 ? static_cast<std::size_t>(side_cells) * side_cells : 0,
      fill))
{
}

ElevationMap::ElevationMap(int side_cells, double cell_size, double origin_x, double origin_y,
  std::vector<double> cells)
: side_(side_cells),
  cell_size_(cell_size),
  origin_x_(origin_x),
  origin_y_(origin_y),
  cells_(std::move(cells))
{
  if (side_ < 2) throw InvalidParams("elevation map needs at least 2 cells per side");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
    throw InvalidParams("cell size must be positive and finite");
  }
  if (cells_.size() != static_cast<std::size_t>(side_) * side_) {
    throw NonSquareGrid("expected " + std::to_string(side_) + "x" + std::to_string(side_) +
      " cells, got " + std::to_string(cells_.size()));
  }
}

bool ElevationMap::contains_local(double dx, double dy) const
{
  const double h = half_extent();
  return dx >= -h && dx <= h && dy >= -h && dy <= h;
}

double ElevationMap::try_elevation_local(double dx, double dy, bool & ok) const
{
  const double h = half_extent();
  if (!(dx >= -h && dx <= h && dy >= -h && dy <= h)) {
    ok = false;
    return 0.0;
  }
  // Fractional indices measured from the top-left cell center.
  const double fc = (dx + h) / cell_size_;
  const double fr = (h - dy) / cell_size_;
  int c0 = static_cast<int>(fc);
  int r0 = static_cast<int>(fr);
  if (c0 > side_ - 2) c0 = side_ - 2;
  if (r0 > side_ - 2) r0 = side_ - 2;
  const double tc = fc - c0;
  const double tr = fr - r0;
  const double * row0 = &cells_[static_cast<std::size_t>(r0) * side_ + c0];
  const double * row1 = row0 + side_;
  const double top = row0[0] + (row0[1] - row0[0]) * tc;
  const double bottom = row1[0] + (row1[1] - row1[0]) * tc;
  ok = true;
  return top + (bottom - top) * tr;
}

double ElevationMap::elevation_local(double dx, double dy) const
{
  bool ok = false;
  double z = try_elevation_local(dx, dy, ok);
  if (!ok) {
    throw OutOfBounds("query (" + std::to_string(dx) + ", " + std::to_string(dy) +
      ") relative to map center is outside the +/-" + std::to_string(half_extent()) +
      " m extent");
  }
  return z;
}

double ElevationMap::elevation_at(double x, double y) const
{
  return elevation_local(x - origin_x_, y - origin_y_);
}

void ElevationMap::quantize_to_float()
{
  for (double & v : cells_) v = static_cast<double>(static_cast<float>(v));
}

ElevationMap ElevationMap::resampled(int new_side) const
{
  if (new_side == side_) return *this;
  const double new_cell = extent() / (new_side - 1);
  ElevationMap out(new_side, new_cell, origin_x_, origin_y_);
  const double h = half_extent();
  for (int r = 0; r < new_side; ++r) {
    // Pin the last row/column to the edge so rounding cannot leave the extent.
    const double dy = (r == new_side - 1) ? -h : h - r * new_cell;
    for (int c = 0; c < new_side; ++c) {
      const double dx = (c == new_side - 1) ? h : -h + c * new_cell;
      out.at(r, c) = elevation_local(dx, dy);
    }
  }
  return out;
}

ElevationMap ElevationMap::rotated_quarter_turns(int quarter_turns) const
{
  const int turns = ((quarter_turns % 4) + 4) % 4;
  ElevationMap out = *this;
  const int n = side_;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      // Counter-clockwise in world terms (+y up): (x, y) -> (-y, x).
      int sr = r, sc = c;
      for (int t = 0; t < turns; ++t) {
        const int nr = sc;
        const int nc = n - 1 - sr;
        sr = nr;
        sc = nc;
      }
      out.at(r, c) = at(sr, sc);
    }
  }
  return out;
}

}  // namespace traversim

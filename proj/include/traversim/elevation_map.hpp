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

#include <cstddef>
#include <span>
#include <vector>

namespace traversim
{

inline constexpr int kDefaultSideCells = 129;
inline constexpr double kDefaultCellSize = 0.0625;

/// Square grid of terrain elevations (meters) centered on a world origin.
///
/// Storage is row-major with row 0 at the top (largest y) and column 0 at the
/// left (smallest x), the same orientation as the rasterized image channels:
///
///   x(col) = origin_x + (col - (side-1)/2) * cell_size
///   y(row) = origin_y + ((side-1)/2 - row) * cell_size
class ElevationMap
{
public:
  ElevationMap() = default;

  /// Flat map at elevation `fill`. Throws InvalidParams on side < 2 or cell_size <= 0.
  ElevationMap(int side_cells, double cell_size, double origin_x = 0.0, double origin_y = 0.0,
    double fill = 0.0);

  /// Takes ownership of `cells`; throws NonSquareGrid if cells.size() != side².
  ElevationMap(int side_cells, double cell_size, double origin_x, double origin_y,
    std::vector<double> cells);

  int side_cells() const { return side_; }
  double cell_size() const { return cell_size_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  /// Distance from the center to an edge cell center.
  double half_extent() const { return 0.5 * (side_ - 1) * cell_size_; }
  double extent() const { return (side_ - 1) * cell_size_; }

  double & at(int row, int col) { return cells_[static_cast<std::size_t>(row) * side_ + col]; }
  double at(int row, int col) const { return cells_[static_cast<std::size_t>(row) * side_ + col]; }

  std::span<const double> cells() const { return cells_; }
  std::span<double> cells() { return cells_; }

  /// World coordinates of a cell center.
  double cell_x(int col) const { return origin_x_ + local_coord(col); }
  double cell_y(int row) const { return origin_y_ - local_coord(row); }
  /// Offset of cell index `i` from the grid center along its axis.
  double local_coord(int i) const { return (i - 0.5 * (side_ - 1)) * cell_size_; }

  /// Bilinear lookup at world (x, y). Throws OutOfBounds outside the extent.
  double elevation_at(double x, double y) const;

  /// Bilinear lookup at (dx, dy) relative to the map center. Throws OutOfBounds.
  double elevation_local(double dx, double dy) const;

  /// Same as elevation_local but reports out-of-bounds through `ok`.
  double try_elevation_local(double dx, double dy, bool & ok) const;

  bool contains_local(double dx, double dy) const;

  /// Elevation of the cell nearest to the center (the robot-center cell for odd sides).
  double center_value() const { return at(side_ / 2, side_ / 2); }

  /// Rounds every cell to the nearest float, matching what EMAP files can store.
  void quantize_to_float();

  /// Bilinear resample to `new_side` cells over the same extent and origin.
  ElevationMap resampled(int new_side) const;

  /// Grid rotated counter-clockwise by `quarter_turns` × 90°.
  ElevationMap rotated_quarter_turns(int quarter_turns) const;

  friend bool operator==(const ElevationMap &, const ElevationMap &) = default;

private:
  int side_ = 0;
  double cell_size_ = 0.0;
  double origin_x_ = 0.0;
  double origin_y_ = 0.0;
  std::vector<double> cells_;
};

}  // namespace traversim

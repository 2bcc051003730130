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
#include <vector>

#include "traversim/action_space.hpp"
#include "traversim/elevation_map.hpp"
#include "traversim/robot.hpp"
#include "traversim/traverse.hpp"

namespace traversim
{

/// Image geometry and encoding constants for the three-channel sample.
///
/// Pixel (r, c) covers robot-relative x = -extent/2 + c * pitch and
/// y = extent/2 - r * pitch, pitch = extent / (side - 1); the robot sits at
/// the center pixel facing up the image (+y).
struct RasterConfig
{
  int side = 129;
  double extent = 8.0;
  /// Elevation half-range mapped onto [0, 1] around the robot-center elevation.
  double h_norm = 1.0;
  /// Decay rate of the trajectory and wheel-trace profiles.
  double lambda = 3.0;

  double pitch() const { return extent / (side - 1); }
};

/// Single-channel side × side image, row-major, row 0 at the top.
struct Channel
{
  int side = 0;
  std::vector<double> values;

  Channel() = default;
  explicit Channel(int s) : side(s), values(static_cast<std::size_t>(s) * s, 0.0) {}
  double & at(int r, int c) { return values[static_cast<std::size_t>(r) * side + c]; }
  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * side + c]; }
};

/// Shifted, rescaled exponential: 1 for d <= 1 nm, exactly 0 for d >= half_width.
double decay_profile(double d, double half_width, double lambda);

/// clamp(0.5 + (z - z_center) / (2 h_norm), 0, 1), z_center taken under the robot.
Channel raster_elevation(const ElevationMap & map, const RasterConfig & rc = {});

/// Profile of the distance to the trajectory centerline, half-width wheel_track / 2.
Channel raster_trajectory(const RobotConfig & cfg, const Trajectory & traj,
  const RasterConfig & rc = {});

/// Sum over the four wheels of 0.5 × profile(distance to that wheel's path,
/// half-width wheel_width / 2), clamped to [0, 1]; cells crossed by both the
/// front and the rear wheel of a side reach 1.
Channel raster_wheel_trace(const RobotConfig & cfg, const Trajectory & traj,
  const RasterConfig & rc = {});

/// 3 × side × side float tensor (channel-major: elevation, trajectory, wheel trace).
struct SampleTensor
{
  std::uint32_t map_id = 0;
  std::uint32_t traj_id = 0;
  FailureLabel label;
  int side = 129;
  std::vector<float> data;

  float at(int channel, int r, int c) const
  {
    return data[(static_cast<std::size_t>(channel) * side + r) * side + c];
  }
  friend bool operator==(const SampleTensor &, const SampleTensor &) = default;
};

SampleTensor stack_channels(const Channel & elevation, const Channel & trajectory,
  const Channel & wheel_trace);

SampleTensor rasterize(const RobotConfig & cfg, const ElevationMap & map, const Trajectory & traj,
  const RasterConfig & rc = {});

}  // namespace traversim

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
#include <iosfwd>
#include <optional>
#include <vector>

#include "traversim/action_space.hpp"
#include "traversim/elevation_map.hpp"
#include "traversim/robot.hpp"

namespace traversim
{

struct FailureLabel
{
  bool step = false;
  bool obstacle = false;
  bool tilt = false;

  bool any() const { return step || obstacle || tilt; }
  friend bool operator==(const FailureLabel &, const FailureLabel &) = default;
};

struct TraverseResult
{
  FailureLabel label;
  /// Waypoint index at which each event first occurred; set iff the label bit is.
  std::optional<int> first_step;
  std::optional<int> first_obstacle;
  std::optional<int> first_tilt;
  /// False when any robot placement left the map; labels are then incomplete.
  bool valid = true;

  friend bool operator==(const TraverseResult &, const TraverseResult &) = default;
};

/// True iff any wheel moved vertically by strictly more than max_step.
bool check_step(const WheelContacts & prev, const WheelContacts & curr, double max_step);

/// True iff a terrain cell whose center lies inside the yaw-rotated body
/// rectangle rises more than ride_height above the fitted wheel plane.
/// `pose` is in world coordinates. Throws OutOfBounds when the body footprint
/// extends past the map.
bool check_obstacle(const RobotConfig & cfg, const ElevationMap & map, const Pose & pose);

/// True iff the plane inclination is strictly above max_tilt.
bool check_tilt(const Pose & pose, double max_tilt);

/// Walks the robot from the map center along `traj`, latching each failure at
/// its first occurrence. The placement before the point turn (heading +y)
/// serves as the predecessor for the step check at waypoint 0.
TraverseResult simulate(const RobotConfig & cfg, const ElevationMap & map, const Trajectory & traj);

/// One result per trajectory, in input order, for any worker count.
std::vector<TraverseResult> simulate_all(const RobotConfig & cfg, const ElevationMap & map,
  const std::vector<Trajectory> & trajectories, unsigned workers = 1);

struct LabelCounts
{
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t step = 0;
  std::size_t obstacle = 0;
  std::size_t tilt = 0;
  std::size_t any = 0;
};

LabelCounts count_labels(const std::vector<TraverseResult> & results);

// Label CSV: `map_id,traj_id,step,obstacle,tilt,valid` with 0/1 bits.

struct LabelRow
{
  std::uint32_t map_id = 0;
  std::uint32_t traj_id = 0;
  FailureLabel label;
  bool valid = true;
};

void write_label_header(std::ostream & out);
void write_label_rows(std::ostream & out, std::uint32_t map_id,
  const std::vector<TraverseResult> & results);
void write_label_row(std::ostream & out, const LabelRow & row);

/// Throws ParseError on a bad header or malformed row.
std::vector<LabelRow> read_labels_csv(std::istream & in);
std::vector<LabelRow> read_labels_csv(const std::filesystem::path & path);

}  // namespace traversim

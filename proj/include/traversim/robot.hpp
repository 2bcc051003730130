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
#include <filesystem>

#include "traversim/elevation_map.hpp"

namespace traversim
{

class KeyValueConfig;

/// Rigid skid-steer platform geometry and mobility limits (meters, radians).
///
/// Defaults approximate a Seekur Jr class rover; they are placeholders for a
/// measured configuration, not calibrated values.
struct RobotConfig
{
  double wheelbase = 0.60;    ///< front-rear wheel center distance
  double wheel_track = 0.79;  ///< left-right wheel center distance
  double wheel_width = 0.15;
  double body_length = 1.05;
  double body_width = 0.84;
  double ride_height = 0.09;  ///< chassis clearance above the wheel-contact plane
  double max_step = 0.15;
  double max_tilt = 0.5235987755982988;  ///< 30 degrees

  /// Throws InvalidConfig unless all lengths are positive, max_tilt is in
  /// (0, pi/2) and the body covers the wheel rectangle.
  void validate() const;
};

/// Reads a `key = value` file; every field is required and max_tilt is given in degrees.
RobotConfig robot_config_from(const KeyValueConfig & cfg);
RobotConfig load_robot_config(const std::filesystem::path & path);

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

struct Point3
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum Wheel : int { kFrontLeft = 0, kFrontRight = 1, kRearLeft = 2, kRearRight = 3 };

/// Static robot pose. yaw follows the math convention (0 = facing +x, CCW
/// positive) and is normalized to (-pi, pi]. Pitch is positive nose-up, roll
/// positive left-side-up.
struct Pose
{
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double z = 0.0;
  double roll = 0.0;
  double pitch = 0.0;
  /// Angle between the fitted plane normal and world vertical.
  double tilt = 0.0;
  /// Fitted support plane z = z + slope_x * (px - x) + slope_y * (py - y), world frame.
  double slope_x = 0.0;
  double slope_y = 0.0;
  /// Root-mean-square deviation of the four contacts from the plane.
  double residual = 0.0;

  double plane_height(double px, double py) const { return z + slope_x * (px - x) + slope_y * (py - y); }
};

/// FL, FR, RL, RR contact points.
using WheelContacts = std::array<Point3, 4>;

double normalize_angle(double a);

/// Wheel centers at (±wheelbase/2, ±wheel_track/2) in the body frame, rotated
/// by yaw and translated to (x, y). Order: FL, FR, RL, RR.
std::array<Point2, 4> wheel_positions(const RobotConfig & cfg, double x, double y, double yaw);

struct PoseSolution
{
  Pose pose;
  WheelContacts contacts;
};

/// Places the robot at world (x, y, yaw): samples the terrain under each
/// wheel and fits a least-squares plane through the four contacts.
/// Throws OutOfBounds if a wheel falls outside the map.
PoseSolution solve_pose(const RobotConfig & cfg, const ElevationMap & map, double x, double y,
  double yaw);

/// Same as solve_pose with (dx, dy) relative to the map center. Returns false
/// instead of throwing when a wheel leaves the map. Pose coordinates are local.
bool solve_pose_local(const RobotConfig & cfg, const ElevationMap & map, double dx, double dy,
  double yaw, PoseSolution & out);

}  // namespace traversim

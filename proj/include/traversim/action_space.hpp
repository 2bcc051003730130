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
#include <iosfwd>
#include <numbers>
#include <vector>

namespace traversim
{

/// One motion primitive: a point turn followed by two constant-curvature arcs.
struct PrimitiveSpec
{
  int rotation_index = 0;
  double rotation = 0.0;    ///< point-turn angle, radians, normalized to (-pi, pi]
  double rotation_deg = 0.0;
  double curvature1 = 0.0;  ///< 1/m, positive turns left (CCW)
  double curvature2 = 0.0;
  double arc_length = 1.65; ///< per arc, meters
};

/// Pose along a trajectory relative to the start. `heading` is measured from
/// the robot's initial forward direction (+y), CCW positive, normalized to
/// (-pi, pi].
struct Waypoint
{
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double s = 0.0;  ///< arc length from the start
};

struct Trajectory
{
  PrimitiveSpec spec;
  double step_spacing = 0.06;
  /// waypoints[0] is the start point after the point turn; arc 2 begins at
  /// the shared junction waypoint.
  std::vector<Waypoint> waypoints;
  /// Index of the junction between the two arcs.
  std::size_t junction = 0;
};

/// Converts a trajectory heading into the math yaw used by Pose (0 = +x).
inline double heading_to_yaw(double heading) { return heading + std::numbers::pi / 2; }

struct ActionSpaceConfig
{
  /// Evenly spaced, symmetric and including straight (1/m).
  std::vector<double> curvatures = {-0.75, -0.625, -0.5, -0.375, -0.25, -0.125, 0.0,
                                    0.125, 0.25, 0.375, 0.5, 0.625, 0.75};
  /// Multiples of 20 degrees including no rotation.
  std::vector<double> rotations_deg = {0, 20, 40, 60, 80, 100, 120, 140, 160,
                                       180, 200, 220, 240, 260, 280, 300, 320, 340};
  double arc_length = 1.65;
  double step_spacing = 0.06;
};

/// Cartesian product rotation-major, then curvature1, then curvature2.
/// Throws InvalidConfig on empty or non-finite sets, duplicate values, or a
/// non-positive arc length.
std::vector<PrimitiveSpec> build_action_space(const std::vector<double> & curvatures,
  const std::vector<double> & rotations_deg, double arc_length);

/// Builds from a config and additionally requires the 13-curvature × 18-rotation layout.
std::vector<PrimitiveSpec> build_action_space(const ActionSpaceConfig & cfg);

/// Analytic arc integration sampled every `spacing` meters along each arc
/// (the final sample of each arc lands on its end). Throws InvalidConfig on
/// non-positive spacing.
Trajectory discretize(const PrimitiveSpec & spec, double spacing);

std::vector<Trajectory> discretize_all(const std::vector<PrimitiveSpec> & specs, double spacing);

/// Sum of straight-line distances between consecutive waypoints.
double chord_length(const Trajectory & traj);

/// One line per primitive: `index rotation_deg curvature1 curvature2`.
void write_action_manifest(std::ostream & out, const std::vector<PrimitiveSpec> & specs);

}  // namespace traversim

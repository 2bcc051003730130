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

#include "traversim/robot.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "traversim/config_file.hpp"
#include "traversim/errors.hpp"

namespace traversim
{

void RobotConfig::validate() const
{
  const double lengths[] = {wheelbase, wheel_track, wheel_width, body_length, body_width,
                            ride_height, max_step};
  for (double v : lengths) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidConfig("robot lengths must be positive");
  }
  if (!(max_tilt > 0.0 && max_tilt < std::numbers::pi / 2)) {
    throw InvalidConfig("max_tilt must lie in (0, 90) degrees");
  }
  if (body_length < wheelbase || body_width < wheel_track) {
    throw InvalidConfig("body footprint must cover the wheel rectangle");
  }
}

RobotConfig robot_config_from(const KeyValueConfig & cfg)
{
  cfg.reject_unknown({"wheelbase", "wheel_track", "wheel_width", "body_length", "body_width",
    "ride_height", "max_step", "max_tilt_deg"});
  RobotConfig out;
  out.wheelbase = cfg.number("wheelbase");
  out.wheel_track = cfg.number("wheel_track");
  out.wheel_width = cfg.number("wheel_width");
  out.body_length = cfg.number("body_length");
  out.body_width = cfg.number("body_width");
  out.ride_height = cfg.number("ride_height");
  out.max_step = cfg.number("max_step");
  out.max_tilt = cfg.number("max_tilt_deg") * std::numbers::pi / 180.0;
  try {
    out.validate();
  } catch (const InvalidConfig & e) {
    throw InvalidConfig(cfg.source() + ": " + e.what());
  }
  return out;
}

RobotConfig load_robot_config(const std::filesystem::path & path)
{
  return robot_config_from(KeyValueConfig::load(path));
}

double normalize_angle(double a)
{
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

std::array<Point2, 4> wheel_positions(const RobotConfig & cfg, double x, double y, double yaw)
{
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const double a = 0.5 * cfg.wheelbase;
  const double b = 0.5 * cfg.wheel_track;
  auto place = [&](double u, double v) { return Point2{x + u * c - v * s, y + u * s + v * c}; };
  return {place(a, b), place(a, -b), place(-a, b), place(-a, -b)};
}

namespace
{

// Least-squares plane through contacts at the body-frame rectangle corners
// (±a, ±b). The corners are symmetric, so the normal equations decouple.
void fit_plane(const RobotConfig & cfg, const WheelContacts & w, double x, double y, double yaw,
  Pose & pose)
{
  const double a = 0.5 * cfg.wheelbase;
  const double b = 0.5 * cfg.wheel_track;
  const double zfl = w[kFrontLeft].z, zfr = w[kFrontRight].z;
  const double zrl = w[kRearLeft].z, zrr = w[kRearRight].z;

  const double mean = 0.25 * (zfl + zfr + zrl + zrr);
  const double slope_fwd = (zfl + zfr - zrl - zrr) / (4.0 * a);
  const double slope_left = (zfl - zfr + zrl - zrr) / (4.0 * b);
  const double twist = 0.25 * (zfl - zfr - zrl + zrr);

  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  pose.x = x;
  pose.y = y;
  pose.yaw = normalize_angle(yaw);
  pose.z = mean;
  pose.slope_x = slope_fwd * c - slope_left * s;
  pose.slope_y = slope_fwd * s + slope_left * c;
  pose.pitch = std::atan(slope_fwd);
  pose.roll = std::asin(slope_left / std::sqrt(1.0 + slope_fwd * slope_fwd + slope_left * slope_left));
  pose.tilt = std::atan(std::hypot(slope_fwd, slope_left));
  pose.residual = std::abs(twist);
}

}  // namespace

bool solve_pose_local(const RobotConfig & cfg, const ElevationMap & map, double dx, double dy,
  double yaw, PoseSolution & out)
{
  const auto wheels = wheel_positions(cfg, dx, dy, yaw);
  for (int i = 0; i < 4; ++i) {
    bool ok = false;
    const double z = map.try_elevation_local(wheels[i].x, wheels[i].y, ok);
    if (!ok) return false;
    out.contacts[i] = Point3{wheels[i].x, wheels[i].y, z};
  }
  fit_plane(cfg, out.contacts, dx, dy, yaw, out.pose);
  return true;
}

PoseSolution solve_pose(const RobotConfig & cfg, const ElevationMap & map, double x, double y,
  double yaw)
{
  PoseSolution sol;
  if (!solve_pose_local(cfg, map, x - map.origin_x(), y - map.origin_y(), yaw, sol)) {
    throw OutOfBounds("robot at (" + std::to_string(x) + ", " + std::to_string(y) +
      ") has a wheel outside the map");
  }
  // Report world coordinates.
  sol.pose.x = x;
  sol.pose.y = y;
  for (auto & c : sol.contacts) {
    c.x += map.origin_x();
    c.y += map.origin_y();
  }
  return sol;
}

}  // namespace traversim

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

#include "traversim/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace traversim
{

namespace
{
constexpr double kOnCenterline = 1e-9;
}  // namespace

double decay_profile(double d, double half_width, double lambda)
{
  if (d >= half_width) return 0.0;
  // Sub-nanometer distances are roundoff from the waypoint trigonometry.
  if (d <= kOnCenterline) return 1.0;
  const double floor = std::exp(-lambda);
  return (std::exp(-lambda * d / half_width) - floor) / (1.0 - floor);
}

namespace
{

double point_segment_distance(double px, double py, Point2 a, Point2 b)
{
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((px - a.x) * vx + (py - a.y) * vy) / len2, 0.0, 1.0);
  return std::hypot(px - (a.x + t * vx), py - (a.y + t * vy));
}

// Minimum distance from every pixel within `radius` of the polyline; +inf elsewhere.
std::vector<double> polyline_distance(const std::vector<Point2> & pts, double radius,
  const RasterConfig & rc)
{
  const int n = rc.side;
  const double pitch = rc.pitch();
  const double half = 0.5 * rc.extent;
  std::vector<double> dist(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::infinity());
  if (pts.empty()) return dist;

  auto stamp = [&](Point2 a, Point2 b) {
    const double xlo = std::min(a.x, b.x) - radius, xhi = std::max(a.x, b.x) + radius;
    const double ylo = std::min(a.y, b.y) - radius, yhi = std::max(a.y, b.y) + radius;
    const int c0 = std::max(0, static_cast<int>(std::ceil((xlo + half) / pitch)));
    const int c1 = std::min(n - 1, static_cast<int>(std::floor((xhi + half) / pitch)));
    const int r0 = std::max(0, static_cast<int>(std::ceil((half - yhi) / pitch)));
    const int r1 = std::min(n - 1, static_cast<int>(std::floor((half - ylo) / pitch)));
    for (int r = r0; r <= r1; ++r) {
      const double py = half - r * pitch;
      for (int c = c0; c <= c1; ++c) {
        const double px = -half + c * pitch;
        double & slot = dist[static_cast<std::size_t>(r) * n + c];
        slot = std::min(slot, point_segment_distance(px, py, a, b));
      }
    }
  };

  if (pts.size() == 1) stamp(pts[0], pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) stamp(pts[i - 1], pts[i]);
  return dist;
}

}  // namespace

Channel raster_elevation(const ElevationMap & map, const RasterConfig & rc)
{
  Channel ch(rc.side);
  const double z_center = map.elevation_local(0.0, 0.0);
  const double scale = 1.0 / (2.0 * rc.h_norm);
  const bool aligned = map.side_cells() == rc.side && map.extent() == rc.extent;
  const double half = 0.5 * rc.extent;
  const double mh = map.half_extent();
  for (int r = 0; r < rc.side; ++r) {
    for (int c = 0; c < rc.side; ++c) {
      double z;
      if (aligned) {
        z = map.at(r, c);
      } else {
        const double dx = std::clamp(-half + c * rc.pitch(), -mh, mh);
        const double dy = std::clamp(half - r * rc.pitch(), -mh, mh);
        z = map.elevation_local(dx, dy);
      }
      ch.at(r, c) = std::clamp(0.5 + (z - z_center) * scale, 0.0, 1.0);
    }
  }
  return ch;
}

Channel raster_trajectory(const RobotConfig & cfg, const Trajectory & traj, const RasterConfig & rc)
{
  std::vector<Point2> pts;
  pts.reserve(traj.waypoints.size());
  for (const auto & wp : traj.waypoints) pts.push_back({wp.x, wp.y});
  const double hw = 0.5 * cfg.wheel_track;
  const auto dist = polyline_distance(pts, hw, rc);
  Channel ch(rc.side);
  for (std::size_t i = 0; i < dist.size(); ++i) ch.values[i] = decay_profile(dist[i], hw, rc.lambda);
  return ch;
}

Channel raster_wheel_trace(const RobotConfig & cfg, const Trajectory & traj, const RasterConfig & rc)
{
  std::array<std::vector<Point2>, 4> paths;
  for (auto & p : paths) p.reserve(traj.waypoints.size());
  for (const auto & wp : traj.waypoints) {
    const auto wheels = wheel_positions(cfg, wp.x, wp.y, heading_to_yaw(wp.heading));
    for (int w = 0; w < 4; ++w) paths[w].push_back(wheels[w]);
  }
  const double hw = 0.5 * cfg.wheel_width;
  Channel ch(rc.side);
  for (const auto & path : paths) {
    const auto dist = polyline_distance(path, hw, rc);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      ch.values[i] += 0.5 * decay_profile(dist[i], hw, rc.lambda);
    }
  }
  for (double & v : ch.values) v = std::min(v, 1.0);
  return ch;
}

SampleTensor stack_channels(const Channel & elevation, const Channel & trajectory,
  const Channel & wheel_trace)
{
  SampleTensor t;
  t.side = elevation.side;
  const std::size_t plane = static_cast<std::size_t>(t.side) * t.side;
  t.data.resize(3 * plane);
  const Channel * channels[3] = {&elevation, &trajectory, &wheel_trace};
  for (int k = 0; k < 3; ++k) {
    std::transform(channels[k]->values.begin(), channels[k]->values.end(), t.data.begin() + k * plane,
      [](double v) { return static_cast<float>(v); });
  }
  return t;
}

SampleTensor rasterize(const RobotConfig & cfg, const ElevationMap & map, const Trajectory & traj,
  const RasterConfig & rc)
{
  return stack_channels(raster_elevation(map, rc), raster_trajectory(cfg, traj, rc),
    raster_wheel_trace(cfg, traj, rc));
}

}  // namespace traversim

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

#include "traversim/action_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "traversim/errors.hpp"
#include "traversim/robot.hpp"

namespace traversim
{

namespace
{

void require_distinct(std::vector<double> values, const char * what)
{
  if (values.empty()) throw InvalidConfig(std::string(what) + " set is empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidConfig(std::string(what) + " values must be finite");
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw InvalidConfig(std::string(what) + " set contains duplicates");
  }
}

// Advance (x, y, heading) by arc length s at curvature k.
Waypoint advance(const Waypoint & from, double k, double s)
{
  Waypoint out;
  out.s = from.s + s;
  if (std::abs(k) < 1e-12) {
    out.x = from.x - s * std::sin(from.heading);
    out.y = from.y + s * std::cos(from.heading);
    out.heading = from.heading;
    return out;
  }
  // Half-angle form avoids cancellation for small k*s.
  const double half = 0.5 * k * s;
  const double chord = 2.0 * std::sin(half) / k;
  const double mid = from.heading + half;
  out.x = from.x - chord * std::sin(mid);
  out.y = from.y + chord * std::cos(mid);
  out.heading = normalize_angle(from.heading + k * s);
  return out;
}

void append_arc(std::vector<Waypoint> & pts, double k, double length, double spacing)
{
  const Waypoint start = pts.back();
  const auto steps = static_cast<long>(std::ceil(length / spacing - 1e-9));
  for (long i = 1; i < steps; ++i) pts.push_back(advance(start, k, i * spacing));
  pts.push_back(advance(start, k, length));
}

}  // namespace

std::vector<PrimitiveSpec> build_action_space(const std::vector<double> & curvatures,
  const std::vector<double> & rotations_deg, double arc_length)
{
  require_distinct(curvatures, "curvature");
  require_distinct(rotations_deg, "rotation");
  if (!(arc_length > 0.0) || !std::isfinite(arc_length)) {
    throw InvalidConfig("arc length must be positive");
  }
  std::vector<PrimitiveSpec> specs;
  specs.reserve(rotations_deg.size() * curvatures.size() * curvatures.size());
  for (std::size_t r = 0; r < rotations_deg.size(); ++r) {
    const double rad = normalize_angle(rotations_deg[r] * std::numbers::pi / 180.0);
    for (double k1 : curvatures) {
      for (double k2 : curvatures) {
        PrimitiveSpec spec;
        spec.rotation_index = static_cast<int>(r);
        spec.rotation = rad;
        spec.rotation_deg = rotations_deg[r];
        spec.curvature1 = k1;
        spec.curvature2 = k2;
        spec.arc_length = arc_length;
        specs.push_back(spec);
      }
    }
  }
  return specs;
}

std::vector<PrimitiveSpec> build_action_space(const ActionSpaceConfig & cfg)
{
  if (cfg.curvatures.size() != 13 || cfg.rotations_deg.size() != 18) {
    throw InvalidConfig("action space needs 13 curvatures and 18 rotations, got " +
      std::to_string(cfg.curvatures.size()) + " and " + std::to_string(cfg.rotations_deg.size()));
  }
  return build_action_space(cfg.curvatures, cfg.rotations_deg, cfg.arc_length);
}

Trajectory discretize(const PrimitiveSpec & spec, double spacing)
{
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidConfig("waypoint spacing must be positive");
  }
  Trajectory traj;
  traj.spec = spec;
  traj.step_spacing = spacing;
  const auto per_arc = static_cast<std::size_t>(std::ceil(spec.arc_length / spacing - 1e-9));
  traj.waypoints.reserve(1 + 2 * per_arc);
  traj.waypoints.push_back(Waypoint{0.0, 0.0, normalize_angle(spec.rotation), 0.0});
  append_arc(traj.waypoints, spec.curvature1, spec.arc_length, spacing);
  traj.junction = traj.waypoints.size() - 1;
  append_arc(traj.waypoints, spec.curvature2, spec.arc_length, spacing);
  return traj;
}

std::vector<Trajectory> discretize_all(const std::vector<PrimitiveSpec> & specs, double spacing)
{
  std::vector<Trajectory> out;
  out.reserve(specs.size());
  for (const auto & s : specs) out.push_back(discretize(s, spacing));
  return out;
}

double chord_length(const Trajectory & traj)
{
  double total = 0.0;
  for (std::size_t i = 1; i < traj.waypoints.size(); ++i) {
    total += std::hypot(traj.waypoints[i].x - traj.waypoints[i - 1].x,
      traj.waypoints[i].y - traj.waypoints[i - 1].y);
  }
  return total;
}

void write_action_manifest(std::ostream & out, const std::vector<PrimitiveSpec> & specs)
{
  out << "# index rotation_deg curvature1 curvature2\n";
  char line[128];
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu %g %.17g %.17g\n", i, specs[i].rotation_deg,
      specs[i].curvature1, specs[i].curvature2);
    out << line;
  }
}

}  // namespace traversim

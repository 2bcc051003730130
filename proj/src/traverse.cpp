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

#include "traversim/traverse.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "csv_util.hpp"
#include "traversim/errors.hpp"
#include "traversim/parallel.hpp"

namespace traversim
{

bool check_step(const WheelContacts & prev, const WheelContacts & curr, double max_step)
{
  for (int i = 0; i < 4; ++i) {
    if (std::abs(curr[i].z - prev[i].z) > max_step) return true;
  }
  return false;
}

bool check_tilt(const Pose & pose, double max_tilt) { return pose.tilt > max_tilt; }

namespace
{

enum class BodyCheck { Clear, Hit, OutOfMap };

// Scans cells under the body rectangle. `pose` is relative to the map center.
BodyCheck scan_body(const RobotConfig & cfg, const ElevationMap & map, const Pose & pose)
{
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  const double hl = 0.5 * cfg.body_length;
  const double hw = 0.5 * cfg.body_width;
  const double ex = std::abs(c) * hl + std::abs(s) * hw;
  const double ey = std::abs(s) * hl + std::abs(c) * hw;

  const int n = map.side_cells();
  const double cs = map.cell_size();
  const double h = map.half_extent();
  const int col_lo = static_cast<int>(std::ceil((pose.x - ex + h) / cs));
  const int col_hi = static_cast<int>(std::floor((pose.x + ex + h) / cs));
  const int row_lo = static_cast<int>(std::ceil((h - (pose.y + ey)) / cs));
  const int row_hi = static_cast<int>(std::floor((h - (pose.y - ey)) / cs));
  if (col_lo < 0 || row_lo < 0 || col_hi > n - 1 || row_hi > n - 1) return BodyCheck::OutOfMap;

  const double limit = cfg.ride_height;
  for (int r = row_lo; r <= row_hi; ++r) {
    const double py = -map.local_coord(r);
    const double ry = py - pose.y;
    for (int col = col_lo; col <= col_hi; ++col) {
      const double px = map.local_coord(col);
      const double rx = px - pose.x;
      const double along = rx * c + ry * s;
      const double across = -rx * s + ry * c;
      if (std::abs(along) > hl || std::abs(across) > hw) continue;
      if (map.at(r, col) - pose.plane_height(px, py) > limit) return BodyCheck::Hit;
    }
  }
  return BodyCheck::Clear;
}

}  // namespace

bool check_obstacle(const RobotConfig & cfg, const ElevationMap & map, const Pose & pose)
{
  Pose local = pose;
  local.x -= map.origin_x();
  local.y -= map.origin_y();
  const BodyCheck result = scan_body(cfg, map, local);
  if (result == BodyCheck::OutOfMap) throw OutOfBounds("robot body extends past the map");
  return result == BodyCheck::Hit;
}

TraverseResult simulate(const RobotConfig & cfg, const ElevationMap & map, const Trajectory & traj)
{
  TraverseResult result;
  PoseSolution prev;
  if (!solve_pose_local(cfg, map, 0.0, 0.0, heading_to_yaw(0.0), prev)) {
    result.valid = false;
    return result;
  }

  PoseSolution curr;
  const int count = static_cast<int>(traj.waypoints.size());
  for (int k = 0; k < count; ++k) {
    const Waypoint & wp = traj.waypoints[k];
    if (!solve_pose_local(cfg, map, wp.x, wp.y, heading_to_yaw(wp.heading), curr)) {
      result.valid = false;
      return result;
    }
    if (!result.label.step && check_step(prev.contacts, curr.contacts, cfg.max_step)) {
      result.label.step = true;
      result.first_step = k;
    }
    if (!result.label.tilt && check_tilt(curr.pose, cfg.max_tilt)) {
      result.label.tilt = true;
      result.first_tilt = k;
    }
    if (!result.label.obstacle) {
      const BodyCheck body = scan_body(cfg, map, curr.pose);
      if (body == BodyCheck::OutOfMap) {
        result.valid = false;
        return result;
      }
      if (body == BodyCheck::Hit) {
        result.label.obstacle = true;
        result.first_obstacle = k;
      }
    }
    prev.contacts = curr.contacts;
  }
  return result;
}

std::vector<TraverseResult> simulate_all(const RobotConfig & cfg, const ElevationMap & map,
  const std::vector<Trajectory> & trajectories, unsigned workers)
{
  std::vector<TraverseResult> results(trajectories.size());
  parallel_for(trajectories.size(), workers,
    [&](std::size_t i) { results[i] = simulate(cfg, map, trajectories[i]); });
  return results;
}

LabelCounts count_labels(const std::vector<TraverseResult> & results)
{
  LabelCounts counts;
  counts.total = results.size();
  for (const auto & r : results) {
    if (!r.valid) continue;
    ++counts.valid;
    counts.step += r.label.step;
    counts.obstacle += r.label.obstacle;
    counts.tilt += r.label.tilt;
    counts.any += r.label.any();
  }
  return counts;
}

void write_label_header(std::ostream & out) { out << "map_id,traj_id,step,obstacle,tilt,valid\n"; }

void write_label_row(std::ostream & out, const LabelRow & row)
{
  out << row.map_id << ',' << row.traj_id << ',' << int(row.label.step) << ','
      << int(row.label.obstacle) << ',' << int(row.label.tilt) << ',' << int(row.valid) << '\n';
}

void write_label_rows(std::ostream & out, std::uint32_t map_id,
  const std::vector<TraverseResult> & results)
{
  for (std::size_t i = 0; i < results.size(); ++i) {
    write_label_row(out, LabelRow{map_id, static_cast<std::uint32_t>(i), results[i].label,
                           results[i].valid});
  }
}

std::vector<LabelRow> read_labels_csv(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) throw ParseError("labels CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "map_id,traj_id,step,obstacle,tilt,valid") {
    throw ParseError("labels CSV: unexpected header '" + line + "'");
  }
  std::vector<LabelRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = detail::split_csv_line(line);
    if (f.size() != 6) {
      throw ParseError("labels CSV line " + std::to_string(line_no) + ": expected 6 fields");
    }
    LabelRow row;
    row.map_id = detail::parse_field<std::uint32_t>(f[0], line_no, "map_id");
    row.traj_id = detail::parse_field<std::uint32_t>(f[1], line_no, "traj_id");
    row.label.step = detail::parse_bit(f[2], line_no, "step");
    row.label.obstacle = detail::parse_bit(f[3], line_no, "obstacle");
    row.label.tilt = detail::parse_bit(f[4], line_no, "tilt");
    row.valid = detail::parse_bit(f[5], line_no, "valid");
    rows.push_back(row);
  }
  return rows;
}

std::vector<LabelRow> read_labels_csv(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_labels_csv(in);
}

}  // namespace traversim

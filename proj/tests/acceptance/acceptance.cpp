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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "test_util.hpp"
#include "traversim/action_space.hpp"
#include "traversim/cli.hpp"
#include "traversim/dataset.hpp"
#include "traversim/map_io.hpp"
#include "traversim/metrics.hpp"
#include "traversim/parallel.hpp"
#include "traversim/raster.hpp"
#include "traversim/sbt_io.hpp"
#include "traversim/terrain.hpp"
#include "traversim/traverse.hpp"

using namespace traversim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace
{

struct Outcome
{
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string & what)
  {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char * f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

const std::vector<Trajectory> & trajectories()
{
  static const auto t = discretize_all(build_action_space(ActionSpaceConfig{}), 0.06);
  return t;
}

fs::path preset_dir() { return test::source_dir() / "presets"; }

// ------------------------------------------------------------------ tables

struct TableRow
{
  double acc, recall, prec, f1;
};

void check_row(Outcome & o, const char * name, const EventScores & s, const TableRow & want)
{
  auto near = [](const std::optional<double> & v, double w) { return v && std::abs(*v - w) <= 5e-4; };
  o.require(near(s.accuracy, want.acc) && near(s.recall, want.recall) && near(s.precision, want.prec) &&
      near(s.f1, want.f1),
    std::string(name) + " got " + format_score(s.accuracy) + "/" + format_score(s.recall) + "/" +
      format_score(s.precision) + "/" + format_score(s.f1));
}

// Builds aligned pred/label streams for one matrix and counts them back.
ConfusionMatrix from_streams(const ConfusionMatrix & cm)
{
  const std::size_t n = cm.total();
  std::unique_ptr<bool[]> pred(new bool[n]), label(new bool[n]);
  std::size_t i = 0;
  auto fill = [&](std::uint64_t count, bool p, bool l) {
    for (std::uint64_t k = 0; k < count; ++k, ++i) {
      pred[i] = p;
      label[i] = l;
    }
  };
  fill(cm.tp, true, true);
  fill(cm.fp, true, false);
  fill(cm.tn, false, false);
  fill(cm.fn, false, true);
  return confusion(std::span<const bool>(pred.get(), n), std::span<const bool>(label.get(), n));
}

Outcome table1()
{
  Outcome o;
  const ConfusionMatrix cms[3] = {from_streams({201689, 113457, 3126951, 13615}),
    from_streams({180389, 53842, 3211837, 9644}), from_streams({14264, 15806, 3425479, 163})};
  check_row(o, "step", scores(cms[0]), {0.963, 0.937, 0.640, 0.760});
  check_row(o, "obstacle", scores(cms[1]), {0.982, 0.950, 0.770, 0.850});
  check_row(o, "tilt", scores(cms[2]), {0.995, 0.989, 0.474, 0.641});
  check_row(o, "overall", overall(cms), {0.980, 0.944, 0.684, 0.793});
  if (o.pass) o.detail = "all four rows within 5e-4";
  return o;
}

Outcome table2()
{
  Outcome o;
  const ConfusionMatrix cms[3] = {from_streams({48, 811, 132880, 109}), from_streams({436, 521, 132622, 269}),
    from_streams({0, 113, 133735, 0})};
  check_row(o, "step", scores(cms[0]), {0.993, 0.306, 0.056, 0.094});
  check_row(o, "obstacle", scores(cms[1]), {0.994, 0.618, 0.456, 0.525});
  check_row(o, "overall", overall(cms), {0.995, 0.561, 0.251, 0.347});
  const auto tilt = scores(cms[2]);
  o.require(tilt.accuracy && std::abs(*tilt.accuracy - 0.999) <= 5e-4, "tilt accuracy");
  MetricsReport report;
  for (int e = 0; e < 3; ++e) report.events[e] = cms[e];
  std::ostringstream text;
  write_report_text(text, report);
  o.require(text.str().find("tilt          0.999        -        -        -") != std::string::npos,
    "tilt row not rendered as dashes");
  if (o.pass) o.detail = "step, obstacle, overall within 5e-4; tilt accuracy 0.999 with dashed recall/precision/F1";
  return o;
}

// ------------------------------------------------------------------ action space

Outcome action_space()
{
  Outcome o;
  const auto & t = trajectories();
  o.require(t.size() == 3042, "count " + std::to_string(t.size()));
  double worst_rel = 0.0, worst_step = 0.0;
  for (const auto & traj : t) {
    worst_rel = std::max(worst_rel, std::abs(chord_length(traj) - 3.3) / 3.3);
    for (std::size_t i = 1; i < traj.waypoints.size(); ++i) {
      const double ds = std::hypot(traj.waypoints[i].x - traj.waypoints[i - 1].x,
        traj.waypoints[i].y - traj.waypoints[i - 1].y);
      // Interior steps are full 6 cm chords; the last step of each arc closes the remainder.
      if (i != traj.junction && i != traj.waypoints.size() - 1) {
        worst_step = std::max(worst_step, std::abs(ds - 0.06));
      } else {
        o.require(ds <= 0.06 + 1e-12, "closing step longer than 6 cm");
      }
    }
  }
  o.require(worst_rel <= 1e-4, "chord-sum relative error " + fmt("%.3g", worst_rel));
  o.require(worst_step <= 1e-5, "interior spacing error " + fmt("%.3g", worst_step));
  o.detail = o.pass ? "3042 trajectories, max chord-sum rel err " + fmt("%.2e", worst_rel) +
      ", max interior spacing err " + fmt("%.2e", worst_step) + " m"
                    : o.detail;
  return o;
}

// ------------------------------------------------------------------ analytic oracles

Outcome oracles()
{
  Outcome o;
  const RobotConfig cfg;
  const auto & trajs = trajectories();

  // (a) flat map
  {
    const auto results = simulate_all(cfg, ElevationMap(129, 0.0625), trajs, 0);
    const auto c = count_labels(results);
    o.require(c.valid == 3042 && c.any == 0, "(a) flat map has failures");
  }
  // (b) planar maps either side of max_tilt
  {
    const double max_deg = cfg.max_tilt * 180.0 / std::numbers::pi;
    const auto steep = count_labels(simulate_all(cfg, test::tilted_map(max_deg + 2.0), trajs, 0));
    o.require(steep.valid == 3042 && steep.tilt == 3042, "(b) +2 deg tilt count " + std::to_string(steep.tilt));
    const auto gentle = count_labels(simulate_all(cfg, test::tilted_map(max_deg - 2.0), trajs, 0));
    o.require(gentle.valid == 3042 && gentle.tilt == 0, "(b) -2 deg tilt count " + std::to_string(gentle.tilt));
  }
  // (c) step wall across the straight primitive. Cells with y >= 1 m are
  // raised 0.5 m; bilinear ramp spans y in [0.9375, 1.0]. Front wheels sit at
  // y = 0.3 + 0.06 k, so the first k with a jump above 0.15 m is the first
  // with 0.5 * (0.3 + 0.06 k - 0.9375) / 0.0625 > 0.15.
  {
    int predicted = -1;
    double prev = 0.0;
    for (int k = 0; k < 57 && predicted < 0; ++k) {
      const double y = 0.3 + 0.06 * k;
      const double z = y <= 0.9375 ? 0.0 : (y >= 1.0 ? 0.5 : 0.5 * (y - 0.9375) / 0.0625);
      if (std::abs(z - prev) > 0.15) predicted = k;
      prev = z;
    }
    auto wall = test::map_from([](double, double y) { return y >= 1.0 - 1e-9 ? 0.5 : 0.0; });
    const auto r = simulate(cfg, wall, discretize(PrimitiveSpec{}, 0.06));
    o.require(r.valid && r.label.step && r.first_step == predicted,
      "(c) step at " + (r.first_step ? std::to_string(*r.first_step) : std::string("none")) +
        ", predicted " + std::to_string(predicted));
  }
  // (d) spike under and away from the body path
  {
    const Trajectory straight = discretize(PrimitiveSpec{}, 0.06);
    ElevationMap on(129, 0.0625);
    on.at(64 - 24, 64) = cfg.ride_height + 0.05;
    ElevationMap off(129, 0.0625);
    off.at(64 - 24, 64 + 32) = cfg.ride_height + 0.05;
    o.require(simulate(cfg, on, straight).label.obstacle, "(d) spike under path missed");
    o.require(!simulate(cfg, off, straight).label.any(), "(d) spike off path flagged");
  }
  if (o.pass) o.detail = "flat 0 failures; +/-2 deg tilt 3042/0; wall step at predicted waypoint; spike hit/miss";
  return o;
}

// ------------------------------------------------------------------ determinism

std::string slurp_tree(const fs::path & root)
{
  std::vector<fs::path> files;
  for (const auto & e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root));
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto & f : files) all += f.string() + "\n" + test::read_file(root / f);
  return all;
}

int cli_quiet(const std::vector<std::string> & args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

Outcome determinism(unsigned workers)
{
  Outcome o;
  test::TempDir a("acc_det_a"), b("acc_det_b");
  const std::string w1 = "1", wn = std::to_string(workers);

  for (const auto & [dir, w] : {std::pair{&a, w1}, std::pair{&b, wn}}) {
    o.require(cli_quiet({"gen-maps", "--n", "4", "--preset", "ridges", "--seed", "3", "--presets-dir",
                preset_dir().string(), "--out", (dir->path() / "maps").string(), "--workers", w}) == 0,
      "gen-maps failed");
    o.require(cli_quiet({"simulate", "--map", (dir->path() / "maps" / "map_00001.emap").string(), "--out",
                (dir->path() / "labels.csv").string(), "--workers", w}) == 0,
      "simulate failed");
    o.require(cli_quiet({"build-dataset", "--n-maps", "4", "--presets-dir", preset_dir().string(), "--split",
                "0.5,0.25,0.25", "--max-samples-per-split", "24", "--shard-size", "10", "--seed", "9",
                "--out", (dir->path() / "dataset").string(), "--workers", w}) == 0,
      "build-dataset failed");
  }
  o.require(slurp_tree(a / "maps") == slurp_tree(b / "maps"), "gen-maps output differs");
  o.require(test::read_file(a / "labels.csv") == test::read_file(b / "labels.csv"), "simulate output differs");
  o.require(slurp_tree(a / "dataset") == slurp_tree(b / "dataset"), "build-dataset output differs");

  const auto preset = find_preset(preset_dir(), "hills");
  const ElevationMap map = generate_preset_map(preset, 2024);
  o.require(simulate_all(RobotConfig{}, map, trajectories(), 1) ==
      simulate_all(RobotConfig{}, map, trajectories(), workers),
    "simulate_all results differ");
  if (o.pass) o.detail = "gen-maps, simulate, build-dataset byte-identical with 1 and " + wn + " workers";
  return o;
}

// ------------------------------------------------------------------ rasterizer

double segment_distance(double px, double py, const Waypoint & a, const Waypoint & b)
{
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0 ? ((px - a.x) * vx + (py - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - a.x - t * vx, py - a.y - t * vy);
}

std::size_t mirror_index(std::size_t i)
{
  const std::size_t rot = i / 169, k1 = (i / 13) % 13, k2 = i % 13;
  const std::size_t mrot = (18 - rot) % 18;
  return mrot * 169 + (12 - k1) * 13 + (12 - k2);
}

Outcome rasterizer()
{
  Outcome o;
  const RobotConfig cfg;
  const auto & trajs = trajectories();
  const auto specs = build_action_space(ActionSpaceConfig{});
  const double hw = 0.5 * cfg.wheel_track;
  std::vector<Channel> traj_ch(trajs.size()), trace_ch(trajs.size());
  parallel_for(trajs.size(), 0, [&](std::size_t i) {
    traj_ch[i] = raster_trajectory(cfg, trajs[i]);
    trace_ch[i] = raster_wheel_trace(cfg, trajs[i]);
  });

  std::size_t range_bad = 0, center_bad = 0, beyond_bad = 0, mirror_bad = 0, mirror_pair_bad = 0;
  double mirror_err = 0.0;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const auto & t = traj_ch[i];
    const auto & w = trace_ch[i];
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      range_bad += !(t.values[k] >= 0.0 && t.values[k] <= 1.0);
      range_bad += !(w.values[k] >= 0.0 && w.values[k] <= 1.0);
    }
    // Pixel centers that lie on the centerline.
    const auto & wps = trajs[i].waypoints;
    for (std::size_t k = 0; k < wps.size(); ++k) {
      const double c = wps[k].x * 16.0 + 64.0, r = 64.0 - wps[k].y * 16.0;
      if (std::abs(c - std::round(c)) < 1e-9 && std::abs(r - std::round(r)) < 1e-9) {
        center_bad += t.at(static_cast<int>(std::lround(r)), static_cast<int>(std::lround(c))) != 1.0;
      }
    }
    // Every pixel at least W/2 from the polyline is zero.
    double xlo = 1e9, xhi = -1e9, ylo = 1e9, yhi = -1e9;
    for (const auto & p : wps) {
      xlo = std::min(xlo, p.x); xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y); yhi = std::max(yhi, p.y);
    }
    for (int r = 0; r < 129; ++r) {
      const double py = 4.0 - r / 16.0;
      for (int c = 0; c < 129; ++c) {
        const double px = -4.0 + c / 16.0;
        double d;
        if (px < xlo - hw || px > xhi + hw || py < ylo - hw || py > yhi + hw) {
          d = hw + 1.0;
        } else {
          d = 1e9;
          for (std::size_t k = 1; k < wps.size(); ++k) d = std::min(d, segment_distance(px, py, wps[k - 1], wps[k]));
        }
        if (d >= hw) beyond_bad += t.at(r, c) != 0.0;
        if (d == 0.0) center_bad += t.at(r, c) != 1.0;
      }
    }
    // Mirror image of primitive i is primitive mirror_index(i).
    const std::size_t j = mirror_index(i);
    const auto & s = specs[i];
    const auto & m = specs[j];
    if (std::abs(normalize_angle(s.rotation + m.rotation)) > 1e-12 || s.curvature1 != -m.curvature1 ||
        s.curvature2 != -m.curvature2) {
      ++mirror_pair_bad;
      continue;
    }
    for (int r = 0; r < 129; ++r) {
      for (int c = 0; c < 129; ++c) {
        const double e1 = std::abs(t.at(r, c) - traj_ch[j].at(r, 128 - c));
        const double e2 = std::abs(w.at(r, c) - trace_ch[j].at(r, 128 - c));
        mirror_err = std::max({mirror_err, e1, e2});
        mirror_bad += (e1 > 1e-9) + (e2 > 1e-9);
      }
    }
  }
  o.require(range_bad == 0, std::to_string(range_bad) + " values outside [0,1]");
  o.require(center_bad == 0, std::to_string(center_bad) + " centerline pixels below 1");
  o.require(beyond_bad == 0, std::to_string(beyond_bad) + " nonzero pixels beyond W/2");
  o.require(mirror_pair_bad == 0, "mirror pairing broken");
  o.require(mirror_bad == 0, "mirror error " + fmt("%.3g", mirror_err));

  // Elevation channel is invariant to a constant offset.
  const auto preset = find_preset(preset_dir(), "ridges");
  const ElevationMap map = generate_preset_map(preset, 31);
  std::vector<double> raised(map.cells().begin(), map.cells().end());
  for (double & v : raised) v += 3.0;
  const ElevationMap up(129, map.cell_size(), 0, 0, raised);
  const Channel e0 = raster_elevation(map), e1 = raster_elevation(up);
  double offset_err = 0.0;
  for (std::size_t k = 0; k < e0.values.size(); ++k) offset_err = std::max(offset_err, std::abs(e0.values[k] - e1.values[k]));
  o.require(offset_err <= 1e-12, "elevation offset error " + fmt("%.3g", offset_err));
  if (o.pass) {
    o.detail = "3042 primitives: range ok, centerline 1, zero beyond W/2, mirror max err " +
      fmt("%.2e", mirror_err) + ", offset err " + fmt("%.1e", offset_err);
  }
  return o;
}

// ------------------------------------------------------------------ class balance

Outcome class_balance()
{
  Outcome o;
  test::TempDir dir("acc_balance");
  DatasetOptions opts;
  opts.n_maps = 500;
  for (const auto & n : default_preset_names(preset_dir())) opts.presets.push_back(find_preset(preset_dir(), n));
  opts.write_tensors = false;
  opts.write_maps = false;
  opts.workers = 0;
  const auto t0 = Clock::now();
  const auto m = build_dataset(opts, dir.path());
  const double safe = static_cast<double>(m.population_safe());
  const double fail = static_cast<double>(m.population_failure());
  const double safe_pct = 100.0 * safe / (safe + fail);
  o.require(safe_pct >= 80.0 && safe_pct <= 97.0, "safe share " + fmt("%.2f%%", safe_pct));
  o.require(safe + fail >= 0.99 * 500 * 3042, "too many invalid trajectories");
  o.detail = "500 maps, safe:failure = " + fmt("%.1f", safe_pct) + ":" + fmt("%.1f", 100.0 - safe_pct) +
    " (" + fmt("%.0f s", seconds_since(t0)) + ")" + (o.pass ? "" : "; " + o.detail);
  return o;
}

// ------------------------------------------------------------------ performance

Outcome performance()
{
  Outcome o;
  const auto preset = find_preset(preset_dir(), "ridges");
  const ElevationMap map = generate_preset_map(preset, 77);
  const RobotConfig cfg;
  const auto & trajs = trajectories();
  simulate_all(cfg, map, trajs, 1);  // warm up
  auto best_of = [&](unsigned workers) {
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = Clock::now();
      simulate_all(cfg, map, trajs, workers);
      best = std::min(best, seconds_since(t0));
    }
    return best;
  };
  const double single = best_of(1);
  const double eight = best_of(8);
  o.require(single < 5.0, "single-threaded " + fmt("%.3f s", single));
  o.require(eight < 1.0, "8 workers " + fmt("%.3f s", eight));
  o.detail = "3042 trajectories: " + fmt("%.3f s", single) + " with 1 worker, " + fmt("%.3f s", eight) +
    " with 8 workers on " + std::to_string(std::thread::hardware_concurrency()) + " hardware threads" +
    (o.pass ? "" : "; " + o.detail);
  return o;
}

// ------------------------------------------------------------------ round trips

Outcome round_trips()
{
  Outcome o;
  test::TempDir dir("acc_rt");
  const auto preset = find_preset(preset_dir(), "hills");
  const ElevationMap map = generate_preset_map(preset, 5);
  write_emap(dir / "a.emap", map);
  write_emap(dir / "b.emap", read_emap(dir / "a.emap"));
  o.require(test::read_file(dir / "a.emap") == test::read_file(dir / "b.emap"), "EMAP bytes differ");
  o.require(read_emap(dir / "a.emap") == map, "EMAP cells differ");

  std::vector<SampleTensor> samples;
  const auto results = simulate_all(RobotConfig{}, map, trajectories(), 0);
  for (std::uint32_t i = 0; i < 3042; i += 500) {
    SampleTensor t = rasterize(RobotConfig{}, map, trajectories()[i]);
    t.map_id = 5;
    t.traj_id = i;
    t.label = results[i].label;
    samples.push_back(std::move(t));
  }
  write_sbt(dir / "a.sbt", samples);
  write_sbt(dir / "b.sbt", read_sbt(dir / "a.sbt"));
  o.require(test::read_file(dir / "a.sbt") == test::read_file(dir / "b.sbt"), "SBT bytes differ");
  o.require(read_sbt(dir / "a.sbt") == samples, "SBT samples differ");
  const auto size = fs::file_size(dir / "a.sbt");
  o.require(size == 12 + samples.size() * (12 + 3 * 129 * 129 * 4), "SBT size " + std::to_string(size));
  if (o.pass) o.detail = "EMAP and SBT write-read-write byte-identical";
  return o;
}

}  // namespace

int main()
{
  struct Criterion
  {
    const char * name;
    std::function<Outcome()> run;
  };
  const unsigned n_workers = std::max(4u, std::thread::hardware_concurrency());
  const std::vector<Criterion> criteria = {
    {"table1-arithmetic", table1},
    {"table2-arithmetic", table2},
    {"action-space-cardinality", action_space},
    {"analytic-oracles", oracles},
    {"determinism-parallelism", [n_workers] { return determinism(n_workers); }},
    {"rasterizer-properties", rasterizer},
    {"class-balance", class_balance},
    {"performance", performance},
    {"format-round-trips", round_trips},
  };
  int failures = 0;
  for (const auto & c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception & e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " [" << fmt("%.2f s", seconds_since(t0)) << "] "
              << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}

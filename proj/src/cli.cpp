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

#include "traversim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "traversim/action_space.hpp"
#include "traversim/dataset.hpp"
#include "traversim/errors.hpp"
#include "traversim/fan_plot.hpp"
#include "traversim/map_io.hpp"
#include "traversim/metrics.hpp"
#include "traversim/parallel.hpp"
#include "traversim/robot.hpp"
#include "traversim/terrain.hpp"
#include "traversim/traverse.hpp"

namespace traversim::cli
{

namespace fs = std::filesystem;

namespace
{

// Usage errors detected after CLI11 parsing succeeded.
class UsageError : public Error
{
public:
  using Error::Error;
};

std::ofstream open_out(const fs::path & path)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

RobotConfig robot_from(const std::string & path)
{
  return load_robot_config(path.empty() ? fs::path(TRAVERSIM_DEFAULT_ROBOT_CONFIG) : fs::path(path));
}

fs::path presets_dir_from(const std::string & flag)
{
  return flag.empty() ? preset_directory() : fs::path(flag);
}

std::vector<std::string> split_list(const std::string & s)
{
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string map_file_name(std::size_t i)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "map_%05zu.emap", i);
  return buf;
}

// ---------------------------------------------------------------- gen-maps

struct GenMapsArgs
{
  int n = 1;
  std::string preset;
  std::uint64_t seed = 0;
  std::string out;
  std::string presets_dir;
  unsigned workers = 0;
};

int gen_maps(const GenMapsArgs & a, std::ostream & out)
{
  if (a.n < 0) throw UsageError("--n must be nonnegative");
  const fs::path dir = presets_dir_from(a.presets_dir);
  std::string name = a.preset;
  if (name.empty()) {
    const auto defaults = default_preset_names(dir);
    if (defaults.empty()) throw UsageError("no presets found in " + dir.string());
    name = defaults.front();
  }
  const TerrainPreset preset = find_preset(dir, name);

  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw IoError("cannot create " + a.out + ": " + ec.message());

  std::vector<std::int64_t> seeds(static_cast<std::size_t>(a.n));
  for (int i = 0; i < a.n; ++i) seeds[i] = map_seed(a.seed, static_cast<std::uint32_t>(i));
  parallel_for(seeds.size(), a.workers, [&](std::size_t i) {
    write_emap(fs::path(a.out) / map_file_name(i), generate_preset_map(preset, seeds[i]));
  });

  std::ofstream mf = open_out(fs::path(a.out) / "manifest.txt");
  mf << "# traversim generated maps\n";
  mf << "preset: " << preset.name << "\n";
  mf << "seed: " << a.seed << "\n";
  mf << "n: " << a.n << "\n";
  mf << "side_cells: " << kDefaultSideCells << "\n";
  mf << "cell_size: " << kDefaultCellSize << "\n";
  mf << "\n[maps]\nfile map_seed\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) mf << map_file_name(i) << ' ' << seeds[i] << "\n";
  if (!mf) throw IoError("write failed: manifest.txt");
  out << "wrote " << a.n << " maps (preset " << preset.name << ") to " << a.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs
{
  std::string map;
  std::string format = "emap";
  std::string robot_config;
  std::string out;
  std::uint32_t map_id = 0;
  unsigned workers = 0;
};

int simulate_cmd(const SimulateArgs & a, std::ostream & out)
{
  const MapFormat format = parse_map_format(a.format);
  const RobotConfig robot = robot_from(a.robot_config);
  const ElevationMap map = import_map(a.map, format).map;
  const auto trajectories = discretize_all(build_action_space(ActionSpaceConfig{}), ActionSpaceConfig{}.step_spacing);
  const auto results = simulate_all(robot, map, trajectories, a.workers);

  std::ofstream csv = open_out(a.out);
  write_label_header(csv);
  write_label_rows(csv, a.map_id, results);
  if (!csv) throw IoError("write failed: " + a.out);

  const LabelCounts c = count_labels(results);
  out << "trajectories=" << c.total << " valid=" << c.valid << " step=" << c.step
      << " obstacle=" << c.obstacle << " tilt=" << c.tilt << " any=" << c.any << "\n";
  return kOk;
}

// ---------------------------------------------------------------- build-dataset

struct BuildArgs
{
  int n_maps = 500;
  std::string presets;
  std::string presets_dir;
  std::string robot_config;
  std::string split = "0.9,0.08,0.02";
  bool no_balance = false;
  double balance_cap = 2.0;
  std::size_t min_safe = 256;
  std::size_t max_samples = 0;
  std::size_t shard_size = 4096;
  bool no_tensors = false;
  std::uint64_t seed = 0;
  std::string out;
  unsigned workers = 0;
};

int build_dataset_cmd(const BuildArgs & a, std::ostream & out)
{
  DatasetOptions opts;
  opts.n_maps = a.n_maps;
  const fs::path dir = presets_dir_from(a.presets_dir);
  const auto names = a.presets.empty() ? default_preset_names(dir) : split_list(a.presets);
  if (names.empty()) throw UsageError("no presets selected");
  for (const auto & n : names) opts.presets.push_back(find_preset(dir, n));
  opts.robot = robot_from(a.robot_config);

  const auto parts = split_list(a.split);
  if (parts.size() != 3) throw UsageError("--split expects three comma-separated ratios");
  try {
    opts.ratios = SplitRatios{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
  } catch (const std::exception &) {
    throw UsageError("--split: ratios must be numbers");
  }
  opts.balance = !a.no_balance;
  opts.balance_cap = a.balance_cap;
  opts.min_safe = a.min_safe;
  opts.max_samples_per_split = a.max_samples;
  opts.shard_size = a.shard_size;
  opts.write_tensors = !a.no_tensors;
  opts.seed = a.seed;
  opts.workers = a.workers;

  const DatasetManifest m = build_dataset(opts, a.out);
  out << "maps=" << m.maps.size() << " population_safe=" << m.population_safe()
      << " population_failure=" << m.population_failure() << " shards=" << m.shards.size() << "\n";
  for (int s = 0; s < 3; ++s) {
    const auto & st = m.splits[s];
    out << kSplitNames[s] << ": maps=" << st.maps << " safe=" << st.exported_safe
        << " failure=" << st.exported_failure << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs
{
  std::string pred;
  std::string labels;
  std::string out;
  std::string csv;
  double threshold = 0.5;
};

int evaluate_cmd(const EvaluateArgs & a, std::ostream & out)
{
  if (!(a.threshold >= 0.0 && a.threshold <= 1.0)) throw UsageError("--threshold must lie in [0, 1]");
  const auto preds = read_predictions_csv(fs::path(a.pred));
  const auto labels = read_labels_csv(fs::path(a.labels));
  const MetricsReport report = evaluate(preds, labels, a.threshold);

  std::ofstream txt = open_out(a.out);
  write_report_text(txt, report);
  const fs::path csv_path = a.csv.empty() ? fs::path(a.out).replace_extension(".csv") : fs::path(a.csv);
  std::ofstream csv = open_out(csv_path);
  write_report_csv(csv, report);
  if (!txt || !csv) throw IoError("failed to write the metrics report");
  write_report_text(out, report);
  return kOk;
}

// ---------------------------------------------------------------- plot-fan

struct PlotArgs
{
  std::string map;
  std::string input;
  std::string out;
  long long map_id = -1;
};

// Loads per-trajectory probabilities for one map from a predictions or labels CSV.
std::array<std::vector<double>, 3> load_fan_probabilities(const PlotArgs & a, std::size_t expected)
{
  std::string header;
  {
    std::ifstream in(a.input);
    if (!in) throw IoError("cannot open " + a.input);
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
  }

  std::map<std::uint32_t, std::map<std::uint32_t, std::array<double, 3>>> by_map;
  if (header.rfind("map_id,traj_id,p_step", 0) == 0) {
    for (const auto & r : read_predictions_csv(fs::path(a.input))) by_map[r.map_id][r.traj_id] = r.p;
  } else {
    for (const auto & r : read_labels_csv(fs::path(a.input))) {
      by_map[r.map_id][r.traj_id] = {double(r.label.step), double(r.label.obstacle), double(r.label.tilt)};
    }
  }
  if (by_map.empty()) throw KeyMismatch("no rows in " + a.input);
  const std::uint32_t id = a.map_id >= 0 ? static_cast<std::uint32_t>(a.map_id) : by_map.begin()->first;
  auto it = by_map.find(id);
  if (it == by_map.end()) throw KeyMismatch("map " + std::to_string(id) + " not present in " + a.input);
  const auto & rows = it->second;
  if (rows.size() != expected || rows.rbegin()->first != expected - 1) {
    throw KeyMismatch("map " + std::to_string(id) + " has " + std::to_string(rows.size()) +
      " trajectories, expected " + std::to_string(expected));
  }
  std::array<std::vector<double>, 3> probs;
  for (const auto & [traj, p] : rows) {
    for (int e = 0; e < 3; ++e) probs[e].push_back(p[e]);
  }
  return probs;
}

int plot_fan_cmd(const PlotArgs & a, std::ostream & out)
{
  const ActionSpaceConfig acfg;
  const auto trajectories = discretize_all(build_action_space(acfg), acfg.step_spacing);
  const auto probs = load_fan_probabilities(a, trajectories.size());

  std::optional<ElevationMap> map;
  if (!a.map.empty()) map = read_emap(fs::path(a.map));
  const ElevationMap * bg = map ? &*map : nullptr;

  std::vector<double> composite(trajectories.size());
  for (std::size_t i = 0; i < composite.size(); ++i) {
    composite[i] = std::max({probs[0][i], probs[1][i], probs[2][i]});
  }
  const fs::path prefix(a.out);
  if (prefix.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(prefix.parent_path(), ec);
  }
  for (int e = 0; e < 3; ++e) {
    const fs::path p = prefix.string() + "_" + kEventNames[e] + ".ppm";
    write_ppm(p, render_fan(trajectories, probs[e], bg));
    out << "wrote " << p.string() << "\n";
  }
  const fs::path p = prefix.string() + "_composite.ppm";
  write_ppm(p, render_fan(trajectories, composite, bg));
  out << "wrote " << p.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- import-map

struct ImportArgs
{
  std::string in;
  std::string format = "text";
  std::string out;
  double extent = 8.0;
  int side = kDefaultSideCells;
};

int import_map_cmd(const ImportArgs & a, std::ostream & out)
{
  if (a.side < 2) throw UsageError("--side must be at least 2");
  if (!(a.extent > 0.0)) throw UsageError("--extent must be positive");
  const ImportedMap imported = import_map(a.in, parse_map_format(a.format), a.side, a.extent);
  write_emap(fs::path(a.out), imported.map);
  out << "source: " << imported.source << "\n"
      << "source_side: " << imported.source_side << "\n"
      << "resampled: " << (imported.resampled ? "true" : "false") << "\n"
      << "side_cells: " << imported.map.side_cells() << "\n"
      << "cell_size: " << imported.map.cell_size() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- dump-actions

int dump_actions_cmd(const std::string & path, std::ostream & out)
{
  const auto specs = build_action_space(ActionSpaceConfig{});
  if (path.empty()) {
    write_action_manifest(out, specs);
  } else {
    std::ofstream f = open_out(path);
    write_action_manifest(f, specs);
    if (!f) throw IoError("write failed: " + path);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Traversability simulation toolkit: terrain generation, traverse labeling, "
               "dataset building and evaluation.", "traversim"};
  app.require_subcommand(1);

  GenMapsArgs gen;
  auto * gen_cmd = app.add_subcommand("gen-maps", "Generate procedural elevation maps (EMAP files)");
  gen_cmd->add_option("--n", gen.n, "Number of maps")->capture_default_str();
  gen_cmd->add_option("--preset", gen.preset, "Terrain preset name (default: first default preset)");
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--presets-dir", gen.presets_dir, "Preset directory (overrides TRAVERSE_SIM_PRESETS)");
  gen_cmd->add_option("--workers", gen.workers, "Worker threads (0 = hardware concurrency)");

  SimulateArgs sim;
  auto * sim_cmd = app.add_subcommand("simulate", "Label all trajectories of the action space on one map");
  sim_cmd->add_option("--map", sim.map, "Elevation map file")->required();
  sim_cmd->add_option("--format", sim.format, "Map format: emap or text")->capture_default_str();
  sim_cmd->add_option("--robot-config", sim.robot_config, "Robot config file (key = value)");
  sim_cmd->add_option("--out", sim.out, "Labels CSV")->required();
  sim_cmd->add_option("--map-id", sim.map_id, "map_id column value")->capture_default_str();
  sim_cmd->add_option("--workers", sim.workers, "Worker threads (0 = hardware concurrency)");

  BuildArgs build;
  auto * build_cmd = app.add_subcommand("build-dataset", "Generate, label, split, balance and rasterize a dataset");
  build_cmd->add_option("--n-maps", build.n_maps, "Number of maps")->capture_default_str();
  build_cmd->add_option("--presets", build.presets, "Comma-separated preset names (default: the DEFAULT list)");
  build_cmd->add_option("--presets-dir", build.presets_dir, "Preset directory (overrides TRAVERSE_SIM_PRESETS)");
  build_cmd->add_option("--robot-config", build.robot_config, "Robot config file (key = value)");
  build_cmd->add_option("--split", build.split, "train,val,test ratios")->capture_default_str();
  build_cmd->add_flag("--no-balance", build.no_balance, "Keep every safe sample in train/val");
  build_cmd->add_option("--balance-cap", build.balance_cap, "Maximum safe:failure ratio")->capture_default_str();
  build_cmd->add_option("--min-safe", build.min_safe, "Safe samples kept per balanced split at least")->capture_default_str();
  build_cmd->add_option("--max-samples-per-split", build.max_samples, "Random cap per split after balancing (0 = none)")->capture_default_str();
  build_cmd->add_option("--shard-size", build.shard_size, "Samples per SBT shard")->capture_default_str();
  build_cmd->add_flag("--no-tensors", build.no_tensors, "Write labels and manifest only");
  build_cmd->add_option("--seed", build.seed, "Master seed")->capture_default_str();
  build_cmd->add_option("--out", build.out, "Output directory")->required();
  build_cmd->add_option("--workers", build.workers, "Worker threads (0 = hardware concurrency)");

  EvaluateArgs eval;
  auto * eval_cmd = app.add_subcommand("evaluate", "Score failure predictions against labels");
  eval_cmd->add_option("--pred", eval.pred, "Predictions CSV (map_id,traj_id,p_step,p_obstacle,p_tilt)")->required();
  eval_cmd->add_option("--labels", eval.labels, "Labels CSV")->required();
  eval_cmd->add_option("--out", eval.out, "Text report path")->required();
  eval_cmd->add_option("--csv", eval.csv, "CSV report path (default: report path with .csv)");
  eval_cmd->add_option("--threshold", eval.threshold, "Failure when p > threshold")->capture_default_str();

  PlotArgs plot;
  auto * plot_cmd = app.add_subcommand("plot-fan",
    "Render the action-space fan colored by failure probability: green p < 0.25, "
    "yellow 0.25 <= p <= 0.5, red p > 0.5 (binary labels map to 0/1)");
  plot_cmd->add_option("--map", plot.map, "EMAP background (optional)");
  plot_cmd->add_option("--input", plot.input, "Predictions or labels CSV")->required();
  plot_cmd->add_option("--out", plot.out, "Output prefix; writes <prefix>_{step,obstacle,tilt,composite}.ppm")->required();
  plot_cmd->add_option("--map-id", plot.map_id, "Map to plot (default: lowest map_id present)");

  ImportArgs imp;
  auto * imp_cmd = app.add_subcommand("import-map", "Convert an external elevation grid to EMAP");
  imp_cmd->add_option("--in", imp.in, "Input file")->required();
  imp_cmd->add_option("--format", imp.format, "Input format: emap or text")->capture_default_str();
  imp_cmd->add_option("--out", imp.out, "Output EMAP file")->required();
  imp_cmd->add_option("--extent", imp.extent, "Side length in meters of a text grid")->capture_default_str();
  imp_cmd->add_option("--side", imp.side, "Cells per side after resampling")->capture_default_str();

  std::string actions_out;
  auto * dump_cmd = app.add_subcommand("dump-actions", "Write the action-space manifest");
  dump_cmd->add_option("--out", actions_out, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return gen_maps(gen, out);
    if (*sim_cmd) return simulate_cmd(sim, out);
    if (*build_cmd) return build_dataset_cmd(build, out);
    if (*eval_cmd) return evaluate_cmd(eval, out);
    if (*plot_cmd) return plot_fan_cmd(plot, out);
    if (*imp_cmd) return import_map_cmd(imp, out);
    if (*dump_cmd) return dump_actions_cmd(actions_out, out);
  } catch (const UsageError & e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidConfig & e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParams & e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidRatios & e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const KeyMismatch & e) {
    err << "error: " << e.what() << "\n";
    return kConsistency;
  } catch (const LengthMismatch & e) {
    err << "error: " << e.what() << "\n";
    return kConsistency;
  } catch (const Error & e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace traversim::cli

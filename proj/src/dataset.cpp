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

#include "traversim/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <random>

#include "traversim/errors.hpp"
#include "traversim/map_io.hpp"
#include "traversim/parallel.hpp"
#include "traversim/rng.hpp"
#include "traversim/sbt_io.hpp"
#include "traversim/traverse.hpp"

namespace traversim
{

void SplitRatios::validate() const
{
  for (double r : {train, val, test}) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidRatios("split ratios must lie in [0, 1]");
  }
  if (std::abs(train + val + test - 1.0) > 1e-9) {
    throw InvalidRatios("split ratios must sum to 1");
  }
}

std::size_t DatasetManifest::population_safe() const
{
  std::size_t n = 0;
  for (const auto & s : splits) n += s.population_safe;
  return n;
}

std::size_t DatasetManifest::population_failure() const
{
  std::size_t n = 0;
  for (const auto & s : splits) n += s.population_failure;
  return n;
}

std::int64_t map_seed(std::uint64_t master, std::uint32_t index)
{
  return static_cast<std::int64_t>(splitmix64(master ^ splitmix64(index)) >> 2);
}

ElevationMap generate_preset_map(const TerrainPreset & preset, std::int64_t seed, unsigned workers)
{
  TerrainParams params = preset.params;
  params.set_seeds(seed, preset.shared_seed);
  ElevationMap map = generate_map(params, kDefaultSideCells, kDefaultCellSize, 0.0, 0.0, workers);
  map.quantize_to_float();
  return map;
}

std::array<ElevationMap, 4> augment_rotations(const ElevationMap & map)
{
  return {map, map.rotated_quarter_turns(1), map.rotated_quarter_turns(2),
          map.rotated_quarter_turns(3)};
}

namespace
{

// Compact per-sample label: bit 0 step, 1 obstacle, 2 tilt, 3 valid.
using PackedLabel = std::uint8_t;

PackedLabel pack(const TraverseResult & r)
{
  return static_cast<PackedLabel>(r.label.step | (r.label.obstacle << 1) | (r.label.tilt << 2) |
    (r.valid << 3));
}

FailureLabel unpack(PackedLabel p) { return {(p & 1) != 0, (p & 2) != 0, (p & 4) != 0}; }
bool packed_valid(PackedLabel p) { return (p & 8) != 0; }
bool packed_failure(PackedLabel p) { return (p & 7) != 0; }

struct SampleRef
{
  std::uint32_t map_id;
  std::uint32_t traj_id;
  friend bool operator<(const SampleRef & a, const SampleRef & b)
  {
    return a.map_id != b.map_id ? a.map_id < b.map_id : a.traj_id < b.traj_id;
  }
};

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream)
{
  return std::mt19937_64(splitmix64(seed ^ splitmix64(0xA5A5'0000ULL + stream)));
}

// Keeps `keep` elements chosen uniformly at random, restoring sorted order.
void subsample(std::vector<SampleRef> & refs, std::size_t keep, std::mt19937_64 & rng)
{
  if (keep >= refs.size()) return;
  deterministic_shuffle(refs, rng);
  refs.resize(keep);
  std::sort(refs.begin(), refs.end());
}

std::string shard_name(Split split, std::size_t index)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "shard_%s_%05zu.sbt", kSplitNames[static_cast<int>(split)], index);
  return buf;
}

std::string map_file_name(std::uint32_t id)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "map_%05u.emap", id);
  return buf;
}

std::ofstream open_text(const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

DatasetManifest build_dataset(const DatasetOptions & opts, const std::filesystem::path & out_dir)
{
  opts.ratios.validate();
  opts.robot.validate();
  if (opts.n_maps < 0) throw InvalidConfig("n_maps must be nonnegative");
  if (opts.n_maps > 0 && opts.presets.empty()) throw InvalidConfig("at least one preset is required");
  if (!(opts.balance_cap > 0.0)) throw InvalidConfig("balance cap must be positive");
  if (opts.shard_size == 0) throw InvalidConfig("shard size must be positive");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (opts.write_maps) std::filesystem::create_directories(out_dir / "maps", ec);
  if (opts.write_tensors) std::filesystem::create_directories(out_dir / "shards", ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  const auto specs = build_action_space(opts.actions);
  const auto trajectories = discretize_all(specs, opts.actions.step_spacing);
  const std::size_t per_map = trajectories.size();
  const auto n_maps = static_cast<std::size_t>(opts.n_maps);

  DatasetManifest manifest;
  manifest.seed = opts.seed;
  for (const auto & p : opts.presets) manifest.presets.push_back(p.name);
  manifest.trajectories_per_map = per_map;
  manifest.balance = opts.balance;
  manifest.balance_cap = opts.balance_cap;
  manifest.min_safe = opts.min_safe;
  manifest.max_samples_per_split = opts.max_samples_per_split;
  manifest.tensors = opts.write_tensors;
  manifest.maps.resize(n_maps);
  for (std::size_t i = 0; i < n_maps; ++i) {
    auto & rec = manifest.maps[i];
    rec.map_id = static_cast<std::uint32_t>(i);
    rec.preset = opts.presets[i % opts.presets.size()].name;
    rec.seed = map_seed(opts.seed, rec.map_id);
  }

  // Stage 1: generate and simulate every map. Each map is an independent task.
  std::vector<PackedLabel> labels(n_maps * per_map);
  parallel_for(n_maps, opts.workers, [&](std::size_t i) {
    const auto & rec = manifest.maps[i];
    const ElevationMap map = generate_preset_map(opts.presets[i % opts.presets.size()], rec.seed);
    if (opts.write_maps) write_emap(out_dir / "maps" / map_file_name(rec.map_id), map);
    const auto results = simulate_all(opts.robot, map, trajectories, 1);
    for (std::size_t t = 0; t < per_map; ++t) labels[i * per_map + t] = pack(results[t]);
  });

  // Stage 2: split by map.
  std::vector<std::uint32_t> order(n_maps);
  for (std::size_t i = 0; i < n_maps; ++i) order[i] = static_cast<std::uint32_t>(i);
  auto split_rng = stream_rng(opts.seed, 0);
  deterministic_shuffle(order, split_rng);
  const auto n_train = std::min(n_maps, static_cast<std::size_t>(std::floor(opts.ratios.train * n_maps + 0.5)));
  const auto n_val = std::min(n_maps - n_train, static_cast<std::size_t>(std::floor(opts.ratios.val * n_maps + 0.5)));
  for (std::size_t k = 0; k < n_maps; ++k) {
    const Split s = k < n_train ? Split::Train : (k < n_train + n_val ? Split::Val : Split::Test);
    manifest.maps[order[k]].split = s;
  }

  // Stage 3: population statistics and balanced selection.
  std::array<std::vector<SampleRef>, 3> selected;
  {
    std::ofstream all = open_text(out_dir / "labels_all.csv");
    write_label_header(all);
    std::array<std::vector<SampleRef>, 3> safe, fail;
    for (std::size_t i = 0; i < n_maps; ++i) {
      const int s = static_cast<int>(manifest.maps[i].split);
      auto & stats = manifest.splits[s];
      ++stats.maps;
      for (std::size_t t = 0; t < per_map; ++t) {
        const PackedLabel p = labels[i * per_map + t];
        const SampleRef ref{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t)};
        write_label_row(all, LabelRow{ref.map_id, ref.traj_id, unpack(p), packed_valid(p)});
        if (!packed_valid(p)) {
          ++stats.invalid;
        } else if (packed_failure(p)) {
          ++stats.population_failure;
          fail[s].push_back(ref);
        } else {
          ++stats.population_safe;
          safe[s].push_back(ref);
        }
      }
    }
    if (!all) throw IoError("write failed: labels_all.csv");

    for (int s = 0; s < 3; ++s) {
      auto rng = stream_rng(opts.seed, 1 + s);
      if (opts.balance && static_cast<Split>(s) != Split::Test) {
        const double cap = std::ceil(opts.balance_cap * static_cast<double>(fail[s].size()));
        const auto keep = std::max(static_cast<std::size_t>(cap), opts.min_safe);
        subsample(safe[s], keep, rng);
      }
      auto & sel = selected[s];
      sel.reserve(safe[s].size() + fail[s].size());
      std::merge(safe[s].begin(), safe[s].end(), fail[s].begin(), fail[s].end(), std::back_inserter(sel));
      if (opts.max_samples_per_split > 0) subsample(sel, opts.max_samples_per_split, rng);

      auto & stats = manifest.splits[s];
      std::ofstream out = open_text(out_dir / (std::string("labels_") + kSplitNames[s] + ".csv"));
      write_label_header(out);
      for (const auto & ref : sel) {
        const PackedLabel p = labels[ref.map_id * per_map + ref.traj_id];
        const FailureLabel l = unpack(p);
        write_label_row(out, LabelRow{ref.map_id, ref.traj_id, l, true});
        if (l.any()) {
          ++stats.exported_failure;
        } else {
          ++stats.exported_safe;
        }
        stats.exported_events[0] += l.step;
        stats.exported_events[1] += l.obstacle;
        stats.exported_events[2] += l.tilt;
      }
      if (!out) throw IoError("write failed: labels split file");
    }
  }

  // Stage 4: rasterize selected samples map by map into fixed-size shards.
  if (opts.write_tensors) {
    for (int s = 0; s < 3; ++s) {
      const auto & sel = selected[s];
      std::size_t shard_index = 0;
      std::unique_ptr<SbtWriter> writer;
      auto finish_shard = [&]() {
        if (!writer) return;
        writer->close();
        manifest.shards.back().samples = writer->count();
        writer.reset();
      };

      std::size_t begin = 0;
      while (begin < sel.size()) {
        std::size_t end = begin;
        while (end < sel.size() && sel[end].map_id == sel[begin].map_id) ++end;
        const std::uint32_t map_id = sel[begin].map_id;
        const ElevationMap map =
          generate_preset_map(opts.presets[map_id % opts.presets.size()], manifest.maps[map_id].seed);

        // Bounded batches keep memory flat while workers rasterize in parallel.
        constexpr std::size_t kBatch = 256;
        for (std::size_t b = begin; b < end; b += kBatch) {
          const std::size_t e = std::min(end, b + kBatch);
          std::vector<SampleTensor> batch(e - b);
          parallel_for(e - b, opts.workers, [&](std::size_t j) {
            const SampleRef & ref = sel[b + j];
            SampleTensor t = rasterize(opts.robot, map, trajectories[ref.traj_id], opts.raster);
            t.map_id = ref.map_id;
            t.traj_id = ref.traj_id;
            t.label = unpack(labels[ref.map_id * per_map + ref.traj_id]);
            batch[j] = std::move(t);
          });
          for (auto & t : batch) {
            if (!writer) {
              const auto name = shard_name(static_cast<Split>(s), shard_index++);
              writer = std::make_unique<SbtWriter>(out_dir / "shards" / name, opts.raster.side);
              manifest.shards.push_back(ShardRecord{name, static_cast<Split>(s), 0});
            }
            writer->append(t);
            if (writer->count() == opts.shard_size) finish_shard();
          }
        }
        begin = end;
      }
      finish_shard();
    }
  }

  std::ofstream mf = open_text(out_dir / "manifest.txt");
  write_manifest(mf, manifest);
  if (!mf) throw IoError("write failed: manifest.txt");
  return manifest;
}

void write_manifest(std::ostream & out, const DatasetManifest & m)
{
  out << "# traversim dataset manifest\n";
  out << "format_version: " << m.format_version << "\n";
  out << "seed: " << m.seed << "\n";
  out << "presets:";
  for (const auto & p : m.presets) out << ' ' << p;
  out << "\n";
  out << "n_maps: " << m.maps.size() << "\n";
  out << "trajectories_per_map: " << m.trajectories_per_map << "\n";
  out << "balance: " << (m.balance ? "true" : "false") << "\n";
  out << "balance_cap: " << m.balance_cap << "\n";
  out << "min_safe: " << m.min_safe << "\n";
  out << "max_samples_per_split: " << m.max_samples_per_split << "\n";
  out << "tensors: " << (m.tensors ? "true" : "false") << "\n";
  const auto safe = m.population_safe();
  const auto fail = m.population_failure();
  out << "population_safe: " << safe << "\n";
  out << "population_failure: " << fail << "\n";
  if (safe + fail > 0) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f:%.2f", 100.0 * safe / (safe + fail), 100.0 * fail / (safe + fail));
    out << "population_ratio_percent: " << buf << "\n";
  }

  out << "\n[splits]\n";
  out << "split maps invalid population_safe population_failure exported_safe exported_failure "
         "exported_step exported_obstacle exported_tilt\n";
  for (int s = 0; s < 3; ++s) {
    const auto & st = m.splits[s];
    out << kSplitNames[s] << ' ' << st.maps << ' ' << st.invalid << ' ' << st.population_safe << ' '
        << st.population_failure << ' ' << st.exported_safe << ' ' << st.exported_failure << ' '
        << st.exported_events[0] << ' ' << st.exported_events[1] << ' ' << st.exported_events[2]
        << "\n";
  }

  out << "\n[shards]\nfile split samples\n";
  for (const auto & sh : m.shards) {
    out << sh.file << ' ' << kSplitNames[static_cast<int>(sh.split)] << ' ' << sh.samples << "\n";
  }

  out << "\n[maps]\nmap_id preset seed split\n";
  for (const auto & rec : m.maps) {
    out << rec.map_id << ' ' << rec.preset << ' ' << rec.seed << ' '
        << kSplitNames[static_cast<int>(rec.split)] << "\n";
  }
}

}  // namespace traversim

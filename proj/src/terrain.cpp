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

#include "traversim/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "traversim/config_file.hpp"
#include "traversim/errors.hpp"
#include "traversim/opensimplex.hpp"
#include "traversim/parallel.hpp"

namespace traversim
{

void TerrainParams::validate() const
{
  const double all[] = {alpha_m, beta_m, gamma_m, alpha_p, beta_p, gamma_p, delta,
                        alpha_w, beta_w, gamma_w, u, d};
  for (double v : all) {
    if (!std::isfinite(v)) throw InvalidParams("terrain parameters must be finite");
  }
  if (delta < 0.0 || delta > 1.0) throw InvalidParams("delta must lie in [0, 1]");
  if (!(d < u)) throw InvalidParams("interpolation thresholds need d < u");
  if (beta_m < 0.0 || beta_p < 0.0 || beta_w < 0.0) {
    throw InvalidParams("beta scales must be nonnegative");
  }
}

void TerrainParams::set_seeds(std::int64_t master, bool shared)
{
  seed_m = master;
  seed_p = shared ? master : master + 1;
  seed_w = shared ? master : master + 2;
}

double intrp(double v, double u, double d)
{
  if (v > u) return 1.0;
  if (v < d) return 0.0;
  return (v - d) / (u - d);
}

ElevationMap generate_map(const TerrainParams & params, int side_cells, double cell_size,
  double origin_x, double origin_y, unsigned workers)
{
  params.validate();
  ElevationMap map(side_cells, cell_size, origin_x, origin_y);
  const NoiseSource mountain(params.seed_m);
  const NoiseSource plain(params.seed_p);
  const NoiseSource blend(params.seed_w);

  auto fill_row = [&](std::size_t row) {
    const int r = static_cast<int>(row);
    const double y = map.cell_y(r);
    for (int c = 0; c < side_cells; ++c) {
      const double x = map.cell_x(c);
      const double m =
        mountain.noise2d(x * params.alpha_m, y * params.alpha_m) * params.beta_m + params.gamma_m;
      double base =
        plain.noise2d(x * params.alpha_p, y * params.alpha_p) * params.beta_p + params.gamma_p;
      if (base < 0.0) {
        if (params.strict_plain_base) {
          throw NegativeBase("plain field base " + std::to_string(base) +
            " is negative at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
        }
        base = 0.0;
      }
      const double p = std::pow(base, params.delta);
      const double w = intrp(
        blend.noise2d(x * params.alpha_w, y * params.alpha_w) * params.beta_w + params.gamma_w,
        params.u, params.d);
      map.at(r, c) = p * w + m * (1.0 - w);
    }
  };
  parallel_for(static_cast<std::size_t>(side_cells), workers, fill_row);
  return map;
}

TerrainPreset preset_from_config(const std::string & name, const KeyValueConfig & cfg)
{
  cfg.reject_unknown({"alpha_m", "beta_m", "gamma_m", "alpha_p", "beta_p", "gamma_p", "delta",
    "alpha_w", "beta_w", "gamma_w", "u", "d", "shared_seed", "strict_plain_base",
    "description"});
  TerrainPreset preset;
  preset.name = name;
  TerrainParams & p = preset.params;
  p.alpha_m = cfg.number("alpha_m");
  p.beta_m = cfg.number("beta_m");
  p.gamma_m = cfg.number("gamma_m");
  p.alpha_p = cfg.number("alpha_p");
  p.beta_p = cfg.number("beta_p");
  p.gamma_p = cfg.number("gamma_p");
  p.delta = cfg.number("delta");
  p.alpha_w = cfg.number("alpha_w");
  p.beta_w = cfg.number("beta_w");
  p.gamma_w = cfg.number("gamma_w");
  p.u = cfg.number("u");
  p.d = cfg.number("d");
  p.strict_plain_base = cfg.boolean_or("strict_plain_base", false);
  preset.shared_seed = cfg.boolean_or("shared_seed", false);
  try {
    p.validate();
  } catch (const InvalidParams & e) {
    throw InvalidConfig(cfg.source() + ": " + e.what());
  }
  return preset;
}

TerrainPreset load_preset(const std::filesystem::path & file)
{
  return preset_from_config(file.stem().string(), KeyValueConfig::load(file));
}

std::filesystem::path preset_directory()
{
  if (const char * env = std::getenv("TRAVERSE_SIM_PRESETS"); env != nullptr && *env != '\0') {
    return env;
  }
  return TRAVERSIM_DEFAULT_PRESET_DIR;
}

std::vector<std::string> list_presets(const std::filesystem::path & dir)
{
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto & entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<std::string> default_preset_names(const std::filesystem::path & dir)
{
  std::ifstream in(dir / "DEFAULT");
  if (!in) return list_presets(dir);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) names.push_back(word);
  }
  return names;
}

TerrainPreset find_preset(const std::filesystem::path & dir, const std::string & name)
{
  const auto file = dir / (name + ".cfg");
  if (!std::filesystem::is_regular_file(file)) {
    std::string msg = "unknown preset '" + name + "'; available:";
    for (const auto & n : list_presets(dir)) msg += " " + n;
    throw InvalidConfig(msg);
  }
  return load_preset(file);
}

}  // namespace traversim

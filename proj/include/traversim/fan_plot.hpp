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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "traversim/action_space.hpp"
#include "traversim/elevation_map.hpp"

namespace traversim
{

/// Failure-probability color bands: green [0, 0.25), yellow [0.25, 0.5],
/// red (0.5, 1]. Both boundaries belong to yellow.
enum class RiskBand { Green, Yellow, Red };

RiskBand risk_band(double p);

struct Rgb
{
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb &, const Rgb &) = default;
};

Rgb band_color(RiskBand band);

/// 8-bit RGB raster, row 0 at the top.
struct Image
{
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(int w, int h, Rgb fill = {});
  Rgb get(int x, int y) const;
  void set(int x, int y, Rgb c);
};

/// Binary portable pixmap (P6).
void write_ppm(const std::filesystem::path & path, const Image & image);
Image read_ppm(const std::filesystem::path & path);

struct FanPlotConfig
{
  double extent = 8.0;           ///< meters shown, centered on the robot
  int pixels_per_meter = 64;
};

/// Draws every trajectory from the image center, colored by its probability,
/// over a grayscale rendering of `background` (uniform gray when null).
/// Higher-risk bands are drawn last so they stay visible.
Image render_fan(const std::vector<Trajectory> & trajectories, std::span<const double> probabilities,
  const ElevationMap * background, const FanPlotConfig & cfg = {});

}  // namespace traversim

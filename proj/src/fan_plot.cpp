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

#include "traversim/fan_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "traversim/errors.hpp"

namespace traversim
{

RiskBand risk_band(double p)
{
  if (p < 0.25) return RiskBand::Green;
  if (p <= 0.5) return RiskBand::Yellow;
  return RiskBand::Red;
}

Rgb band_color(RiskBand band)
{
  switch (band) {
    case RiskBand::Green: return {0, 200, 0};
    case RiskBand::Yellow: return {235, 200, 0};
    case RiskBand::Red: return {220, 0, 0};
  }
  return {};
}

Image::Image(int w, int h, Rgb fill)
: width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3)
{
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) set(x, y, fill);
  }
}

Rgb Image::get(int x, int y) const
{
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

void Image::set(int x, int y, Rgb c)
{
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  rgb[i] = c.r;
  rgb[i + 1] = c.g;
  rgb[i + 2] = c.b;
}

void write_ppm(const std::filesystem::path & path, const Image & image)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char *>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Image read_ppm(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  if (!(in >> magic >> w >> h >> maxval) || magic != "P6" || maxval != 255 || w <= 0 || h <= 0) {
    throw ParseError(path.string() + ": not a binary 8-bit PPM");
  }
  in.get();
  Image img(w, h);
  if (!in.read(reinterpret_cast<char *>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()))) {
    throw ParseError(path.string() + ": truncated pixel data");
  }
  return img;
}

namespace
{

void draw_line(Image & img, double x0, double y0, double x1, double y1, Rgb c)
{
  const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const int x = static_cast<int>(std::lround(x0 + (x1 - x0) * t));
    const int y = static_cast<int>(std::lround(y0 + (y1 - y0) * t));
    if (x >= 0 && y >= 0 && x < img.width && y < img.height) img.set(x, y, c);
  }
}

}  // namespace

Image render_fan(const std::vector<Trajectory> & trajectories, std::span<const double> probabilities,
  const ElevationMap * background, const FanPlotConfig & cfg)
{
  if (probabilities.size() != trajectories.size()) {
    throw LengthMismatch("fan plot needs one probability per trajectory");
  }
  const int size = static_cast<int>(std::lround(cfg.extent * cfg.pixels_per_meter));
  const double half = 0.5 * cfg.extent;
  const double ppm = cfg.pixels_per_meter;
  Image img(size, size, Rgb{128, 128, 128});

  if (background != nullptr) {
    const auto cells = background->cells();
    const auto [lo, hi] = std::minmax_element(cells.begin(), cells.end());
    const double range = *hi - *lo;
    const double mh = background->half_extent();
    for (int py = 0; py < size; ++py) {
      const double dy = std::clamp(half - (py + 0.5) / ppm, -mh, mh);
      for (int px = 0; px < size; ++px) {
        const double dx = std::clamp(-half + (px + 0.5) / ppm, -mh, mh);
        const double t = range > 0.0 ? (background->elevation_local(dx, dy) - *lo) / range : 0.5;
        const auto g = static_cast<std::uint8_t>(std::lround(40.0 + 160.0 * t));
        img.set(px, py, Rgb{g, g, g});
      }
    }
  }

  auto to_px = [&](double x) { return (x + half) * ppm - 0.5; };
  auto to_py = [&](double y) { return (half - y) * ppm - 0.5; };
  for (RiskBand band : {RiskBand::Green, RiskBand::Yellow, RiskBand::Red}) {
    const Rgb color = band_color(band);
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      if (risk_band(probabilities[i]) != band) continue;
      const auto & wps = trajectories[i].waypoints;
      for (std::size_t k = 1; k < wps.size(); ++k) {
        draw_line(img, to_px(wps[k - 1].x), to_py(wps[k - 1].y), to_px(wps[k].x), to_py(wps[k].y), color);
      }
    }
  }
  return img;
}

}  // namespace traversim

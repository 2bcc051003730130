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

#include "traversim/map_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "traversim/binary_io.hpp"
#include "traversim/errors.hpp"

namespace traversim
{

namespace
{

constexpr std::array<char, 4> kMagic = {'E', 'M', 'A', 'P'};
constexpr std::uint16_t kVersion = 1;

}  // namespace

void write_emap(std::ostream & out, const ElevationMap & map)
{
  if (map.side_cells() > std::numeric_limits<std::uint16_t>::max()) {
    throw FormatError("EMAP cannot store more than 65535 cells per side");
  }
  out.write(kMagic.data(), kMagic.size());
  detail::write_le<std::uint16_t>(out, kVersion);
  detail::write_le<std::uint16_t>(out, static_cast<std::uint16_t>(map.side_cells()));
  detail::write_le<float>(out, static_cast<float>(map.cell_size()));
  detail::write_le<double>(out, map.origin_x());
  detail::write_le<double>(out, map.origin_y());
  std::vector<float> cells(map.cells().begin(), map.cells().end());
  detail::write_f32_array(out, cells.data(), cells.size());
}

void write_emap(const std::filesystem::path & path, const ElevationMap & map)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_emap(out, map);
  if (!out) throw IoError("write failed: " + path.string());
}

ElevationMap read_emap(std::istream & in)
{
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) throw ParseError("EMAP: file too short for header");
  if (magic != kMagic) throw ParseError("EMAP: bad magic bytes");
  const auto version = detail::read_le<std::uint16_t>(in, "EMAP version");
  if (version != kVersion) throw ParseError("EMAP: unsupported version " + std::to_string(version));
  const auto side = detail::read_le<std::uint16_t>(in, "EMAP side");
  const auto cell_size = detail::read_le<float>(in, "EMAP cell size");
  const auto origin_x = detail::read_le<double>(in, "EMAP origin");
  const auto origin_y = detail::read_le<double>(in, "EMAP origin");
  if (side < 2) throw ParseError("EMAP: side must be at least 2");
  if (!(cell_size > 0.0f) || !std::isfinite(cell_size)) throw ParseError("EMAP: invalid cell size");

  std::vector<float> raw(static_cast<std::size_t>(side) * side);
  detail::read_f32_array(in, raw.data(), raw.size(), "EMAP elevations");
  std::vector<double> cells(raw.begin(), raw.end());
  for (double v : cells) {
    if (!std::isfinite(v)) throw ParseError("EMAP: non-finite elevation");
  }
  return ElevationMap(side, cell_size, origin_x, origin_y, std::move(cells));
}

ElevationMap read_emap(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_emap(in);
  } catch (const ParseError & e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_grid(const std::filesystem::path & path, const ElevationMap & map)
{
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  char buf[64];
  for (int r = 0; r < map.side_cells(); ++r) {
    for (int c = 0; c < map.side_cells(); ++c) {
      auto res = std::to_chars(buf, buf + sizeof(buf), map.at(r, c));
      if (c != 0) out.put(' ');
      out.write(buf, res.ptr - buf);
    }
    out.put('\n');
  }
  if (!out) throw IoError("write failed: " + path.string());
}

ElevationMap read_text_grid(std::istream & in, double extent)
{
  std::vector<double> cells;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t count = 0;
    const char * p = line.data();
    const char * end = p + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p >= end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || !std::isfinite(v) ||
          (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
        throw ParseError("text grid: bad number on line " + std::to_string(rows + 1));
      }
      cells.push_back(v);
      ++count;
      p = next;
    }
    if (count == 0) continue;
    if (rows == 0) {
      width = count;
    } else if (count != width) {
      throw NonSquareGrid("text grid: row " + std::to_string(rows + 1) + " has " +
        std::to_string(count) + " values, expected " + std::to_string(width));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("text grid: no data");
  if (rows != width) {
    throw NonSquareGrid("text grid is " + std::to_string(rows) + "x" + std::to_string(width));
  }
  if (rows < 2) throw ParseError("text grid: need at least 2x2 values");
  const int side = static_cast<int>(rows);
  return ElevationMap(side, extent / (side - 1), 0.0, 0.0, std::move(cells));
}

ElevationMap read_text_grid(const std::filesystem::path & path, double extent)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_text_grid(in, extent);
}

MapFormat parse_map_format(const std::string & name)
{
  if (name == "emap") return MapFormat::Emap;
  if (name == "text") return MapFormat::Text;
  throw InvalidConfig("unknown map format '" + name + "' (expected emap or text)");
}

ImportedMap import_map(const std::filesystem::path & path, MapFormat format, int side_cells,
  double text_extent)
{
  ImportedMap out;
  out.map = format == MapFormat::Emap ? read_emap(path) : read_text_grid(path, text_extent);
  out.source = path.string();
  out.source_side = out.map.side_cells();
  if (out.map.side_cells() != side_cells) {
    out.map = out.map.resampled(side_cells);
    out.resampled = true;
  }
  return out;
}

}  // namespace traversim

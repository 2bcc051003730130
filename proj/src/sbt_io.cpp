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

#include "traversim/sbt_io.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <limits>
#include <ostream>

#include "traversim/binary_io.hpp"
#include "traversim/errors.hpp"

namespace traversim
{

namespace
{

constexpr std::array<char, 4> kMagic = {'S', 'B', 'T', '1'};
constexpr int kChannels = 3;

void write_header(std::ostream & out, std::uint32_t count, int side)
{
  out.write(kMagic.data(), kMagic.size());
  detail::write_le<std::uint32_t>(out, count);
  detail::write_le<std::uint16_t>(out, static_cast<std::uint16_t>(side));
  detail::write_le<std::uint16_t>(out, kChannels);
}

void write_sample(std::ostream & out, const SampleTensor & s, int side)
{
  if (s.side != side || s.data.size() != static_cast<std::size_t>(kChannels) * side * side) {
    throw FormatError("sample does not match the shard's " + std::to_string(side) + "x" +
      std::to_string(side) + "x3 layout");
  }
  detail::write_le<std::uint32_t>(out, s.map_id);
  detail::write_le<std::uint32_t>(out, s.traj_id);
  detail::write_le<std::uint8_t>(out, s.label.step);
  detail::write_le<std::uint8_t>(out, s.label.obstacle);
  detail::write_le<std::uint8_t>(out, s.label.tilt);
  detail::write_le<std::uint8_t>(out, 0);
  detail::write_f32_array(out, s.data.data(), s.data.size());
}

SbtHeader parse_header(std::istream & in)
{
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) throw ParseError("SBT: file too short for header");
  if (magic != kMagic) throw ParseError("SBT: bad magic bytes");
  SbtHeader h;
  h.sample_count = detail::read_le<std::uint32_t>(in, "SBT sample count");
  h.side = detail::read_le<std::uint16_t>(in, "SBT side");
  h.channels = detail::read_le<std::uint16_t>(in, "SBT channels");
  if (h.channels != kChannels) {
    throw ParseError("SBT: expected 3 channels, found " + std::to_string(h.channels));
  }
  if (h.side < 1) throw ParseError("SBT: zero side");
  return h;
}

bool read_bit(std::istream & in)
{
  const auto v = detail::read_le<std::uint8_t>(in, "SBT label");
  if (v > 1) throw ParseError("SBT: label byte must be 0 or 1");
  return v == 1;
}

}  // namespace

SbtWriter::SbtWriter(const std::filesystem::path & path, int side)
: path_(path), out_(path, std::ios::binary | std::ios::trunc), side_(side)
{
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  if (side < 1 || side > std::numeric_limits<std::uint16_t>::max()) {
    throw FormatError("SBT side out of range");
  }
  write_header(out_, 0, side_);
}

SbtWriter::~SbtWriter()
{
  if (!closed_) {
    try {
      close();
    } catch (...) {
    }
  }
}

void SbtWriter::append(const SampleTensor & sample)
{
  if (count_ == std::numeric_limits<std::uint32_t>::max()) throw FormatError("SBT shard is full");
  write_sample(out_, sample, side_);
  ++count_;
}

void SbtWriter::close()
{
  if (closed_) return;
  closed_ = true;
  out_.seekp(4);
  detail::write_le<std::uint32_t>(out_, count_);
  out_.close();
  if (!out_) throw IoError("write failed: " + path_.string());
}

void write_sbt(std::ostream & out, const std::vector<SampleTensor> & samples, int side)
{
  write_header(out, static_cast<std::uint32_t>(samples.size()), side);
  for (const auto & s : samples) write_sample(out, s, side);
}

void write_sbt(const std::filesystem::path & path, const std::vector<SampleTensor> & samples,
  int side)
{
  SbtWriter writer(path, side);
  for (const auto & s : samples) writer.append(s);
  writer.close();
}

std::vector<SampleTensor> read_sbt(std::istream & in)
{
  const SbtHeader h = parse_header(in);
  std::vector<SampleTensor> samples;
  samples.reserve(std::min<std::uint32_t>(h.sample_count, 4096));
  const std::size_t floats = static_cast<std::size_t>(kChannels) * h.side * h.side;
  for (std::uint32_t i = 0; i < h.sample_count; ++i) {
    SampleTensor s;
    s.side = h.side;
    s.map_id = detail::read_le<std::uint32_t>(in, "SBT map id");
    s.traj_id = detail::read_le<std::uint32_t>(in, "SBT trajectory id");
    s.label.step = read_bit(in);
    s.label.obstacle = read_bit(in);
    s.label.tilt = read_bit(in);
    detail::read_le<std::uint8_t>(in, "SBT pad");
    s.data.resize(floats);
    detail::read_f32_array(in, s.data.data(), floats, "SBT tensor data");
    samples.push_back(std::move(s));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("SBT: trailing bytes after samples");
  return samples;
}

std::vector<SampleTensor> read_sbt(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_sbt(in);
  } catch (const ParseError & e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

SbtHeader read_sbt_header(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_header(in);
}

}  // namespace traversim

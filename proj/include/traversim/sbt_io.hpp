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
#include <fstream>
#include <iosfwd>
#include <vector>

#include "traversim/raster.hpp"

namespace traversim
{

// SBT v1 layout (little-endian):
//   "SBT1" | u32 sample_count | u16 side | u16 channels=3
//   then per sample: u32 map_id | u32 traj_id | u8 step | u8 obstacle | u8 tilt | u8 pad=0
//                    | channels × side × side f32, channel-major.

/// Streaming shard writer; the sample count in the header is patched on close().
class SbtWriter
{
public:
  SbtWriter(const std::filesystem::path & path, int side = 129);
  ~SbtWriter();
  SbtWriter(const SbtWriter &) = delete;
  SbtWriter & operator=(const SbtWriter &) = delete;

  /// Throws FormatError when the sample's side differs from the shard's.
  void append(const SampleTensor & sample);
  std::uint32_t count() const { return count_; }
  /// Finalizes the header; throws IoError if any write failed.
  void close();

private:
  std::filesystem::path path_;
  std::ofstream out_;
  int side_;
  std::uint32_t count_ = 0;
  bool closed_ = false;
};

void write_sbt(std::ostream & out, const std::vector<SampleTensor> & samples, int side = 129);
void write_sbt(const std::filesystem::path & path, const std::vector<SampleTensor> & samples,
  int side = 129);

/// Throws ParseError on bad magic, truncated data, or wrong channel count.
std::vector<SampleTensor> read_sbt(std::istream & in);
std::vector<SampleTensor> read_sbt(const std::filesystem::path & path);

struct SbtHeader
{
  std::uint32_t sample_count = 0;
  int side = 0;
  int channels = 0;
};

SbtHeader read_sbt_header(const std::filesystem::path & path);

}  // namespace traversim

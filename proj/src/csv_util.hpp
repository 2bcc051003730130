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

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "traversim/errors.hpp"

namespace traversim::detail
{

inline std::vector<std::string_view> split_csv_line(std::string_view line)
{
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, const char * what)
{
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
      std::string(field) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ParseError("line " + std::to_string(line_no) + ": non-finite " + what);
    }
  }
  return value;
}

inline bool parse_bit(std::string_view field, std::size_t line_no, const char * what)
{
  if (field == "0") return false;
  if (field == "1") return true;
  throw ParseError("line " + std::to_string(line_no) + ": " + what + " must be 0 or 1, got '" +
    std::string(field) + "'");
}

}  // namespace traversim::detail

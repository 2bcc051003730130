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

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

#include "traversim/errors.hpp"

namespace traversim::detail
{

// Little-endian scalar encoding independent of host byte order.

template <typename T>
void write_le(std::ostream & out, T value)
{
  static_assert(std::is_arithmetic_v<T>);
  using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
    std::conditional_t<sizeof(T) == 2, std::uint16_t,
      std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(bytes, sizeof(T));
}

template <typename T>
T read_le(std::istream & in, const char * what)
{
  static_assert(std::is_arithmetic_v<T>);
  using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
    std::conditional_t<sizeof(T) == 2, std::uint16_t,
      std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char *>(bytes), sizeof(T))) {
    throw ParseError(std::string("unexpected end of file while reading ") + what);
  }
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

/// Bulk float32 encode; fast path when the host is already little-endian.
inline void write_f32_array(std::ostream & out, const float * data, std::size_t count)
{
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char *>(data), static_cast<std::streamsize>(count * 4));
  } else {
    for (std::size_t i = 0; i < count; ++i) write_le<float>(out, data[i]);
  }
}

inline void read_f32_array(std::istream & in, float * data, std::size_t count, const char * what)
{
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char *>(data), static_cast<std::streamsize>(count * 4))) {
      throw ParseError(std::string("unexpected end of file while reading ") + what);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) data[i] = read_le<float>(in, what);
  }
}

}  // namespace traversim::detail

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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace traversim
{

/// Flat `key = value` configuration. `#` starts a comment; blank lines are ignored.
class KeyValueConfig
{
public:
  static KeyValueConfig parse(std::string_view text, const std::string & source = "<string>");
  static KeyValueConfig load(const std::filesystem::path & path);

  bool contains(const std::string & key) const { return values_.count(key) != 0; }

  /// Throws InvalidConfig when the key is missing or not a finite number.
  double number(const std::string & key) const;
  double number_or(const std::string & key, double fallback) const;
  bool boolean_or(const std::string & key, bool fallback) const;
  std::string text(const std::string & key) const;

  /// Throws InvalidConfig naming the first key not in `allowed`.
  void reject_unknown(std::initializer_list<std::string_view> allowed) const;

  const std::map<std::string, std::string> & entries() const { return values_; }
  const std::string & source() const { return source_; }

private:
  std::map<std::string, std::string> values_;
  std::string source_;
};

}  // namespace traversim

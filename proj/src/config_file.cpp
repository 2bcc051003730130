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

#include "traversim/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "traversim/errors.hpp"

namespace traversim
{

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string & source)
{
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidConfig(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key{trim(view.substr(0, eq))};
    std::string value{trim(view.substr(eq + 1))};
    if (key.empty()) {
      throw InvalidConfig(source + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!cfg.values_.emplace(key, value).second) {
      throw InvalidConfig(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

double KeyValueConfig::number(const std::string & key) const
{
  auto it = values_.find(key);
  if (it == values_.end()) throw InvalidConfig(source_ + ": missing key '" + key + "'");
  const std::string & v = it->second;
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw InvalidConfig(source_ + ": key '" + key + "' is not a number: '" + v + "'");
  }
  return out;
}

double KeyValueConfig::number_or(const std::string & key, double fallback) const
{
  return contains(key) ? number(key) : fallback;
}

bool KeyValueConfig::boolean_or(const std::string & key, bool fallback) const
{
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidConfig(source_ + ": key '" + key + "' is not a boolean: '" + it->second + "'");
}

std::string KeyValueConfig::text(const std::string & key) const
{
  auto it = values_.find(key);
  if (it == values_.end()) throw InvalidConfig(source_ + ": missing key '" + key + "'");
  return it->second;
}

void KeyValueConfig::reject_unknown(std::initializer_list<std::string_view> allowed) const
{
  for (const auto & [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidConfig(source_ + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace traversim

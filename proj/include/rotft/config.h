// Copyright 2026 The rotft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROTFT_CONFIG_H_
#define ROTFT_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rotft {

// Line-oriented "key = value" text with "[section]" headers. '#' starts a
// comment. Keys before any header belong to section "run".
struct ConfigFile {
  std::map<std::string, std::map<std::string, std::string>> sections;

  static ConfigFile parse(std::string_view text);  // throws std::invalid_argument
  static ConfigFile load(const std::string& path);
  // Sorted sections and keys, one "section.key=value" per line.
  std::string canonical() const;
};

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

struct ExperimentConfig {
  std::string id;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::size_t shards = 1;
  std::string out = "out";
  // Grid axes in declaration order of the experiment; values kept as text.
  std::vector<std::pair<std::string, std::vector<std::string>>> grid;
  std::map<std::string, std::string> params;

  // Fills defaults from the experiment registry and rejects unknown keys.
  static ExperimentConfig from(const ConfigFile& f);
  static ExperimentConfig defaults(const std::string& id);

  const std::vector<std::string>& axis(const std::string& name) const;
  std::vector<double> axis_numbers(const std::string& name) const;
  double number(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  const std::string& text(const std::string& key) const;

  // Number of grid points (product of axis lengths; 0 if any axis is empty).
  std::size_t points() const;
  // Axis values of point i, last axis fastest.
  std::map<std::string, std::string> point(std::size_t i) const;

  std::string canonical() const;
  std::string hash() const { return hex64(fnv1a64(canonical())); }
};

std::vector<std::string> split_list(std::string_view s);
double parse_number(const std::string& s, const std::string& what);

}  // namespace rotft

#endif  // ROTFT_CONFIG_H_

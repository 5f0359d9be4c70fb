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

#include "rotft/config.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rotft/experiments.h"

namespace rotft {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile f;
  std::string section = "run";
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (t.front() == '[') {
      if (t.back() != ']') throw std::invalid_argument("config: bad section header" + where);
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (!valid_key(section)) throw std::invalid_argument("config: bad section name" + where);
      f.sections[section];
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value" + where);
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (!valid_key(key)) throw std::invalid_argument("config: bad key '" + key + "'" + where);
    auto& sec = f.sections[section];
    if (sec.count(key)) throw std::invalid_argument("config: duplicate key '" + key + "'" + where);
    sec[key] = value;
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ConfigFile::canonical() const {
  std::string out;
  for (const auto& [s, kv] : sections)
    for (const auto& [k, v] : kv) out += s + "." + k + "=" + v + "\n";
  return out;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      auto t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  auto t = trim(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  if (s == "pi/4") return 0.78539816339744830962;
  if (s == "pi/8") return 0.39269908169872415481;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(what + ": not a number: '" + s + "'");
  return v;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& id) {
  ConfigFile f;
  f.sections["run"]["id"] = id;
  return from(f);
}

ExperimentConfig ExperimentConfig::from(const ConfigFile& f) {
  auto run_it = f.sections.find("run");
  if (run_it == f.sections.end() || !run_it->second.count("id"))
    throw std::invalid_argument("config: [run] id is required");
  const auto& info = experiment_info(run_it->second.at("id"));
  ExperimentConfig c;
  c.id = info.id;
  c.shots = info.shots;
  c.out = "out/" + info.id;
  for (const auto& [sec, kv] : f.sections) {
    if (sec == "run") {
      for (const auto& [k, v] : kv) {
        if (k == "id") continue;
        if (k == "shots") c.shots = std::uint64_t(parse_number(v, "shots"));
        else if (k == "seed") c.seed = std::stoull(v);
        else if (k == "shards") c.shards = std::size_t(parse_number(v, "shards"));
        else if (k == "out") c.out = v;
        else throw std::invalid_argument("config: unknown key run." + k);
      }
    } else if (sec == "grid") {
      for (const auto& [k, v] : kv) {
        bool ok = std::any_of(info.grid.begin(), info.grid.end(), [&](auto& g) { return g.name == k; });
        if (!ok) throw std::invalid_argument("config: unknown grid axis '" + k + "' for " + c.id);
      }
    } else if (sec == "params") {
      for (const auto& [k, v] : kv) {
        bool ok = std::any_of(info.params.begin(), info.params.end(), [&](auto& g) { return g.name == k; });
        if (!ok) throw std::invalid_argument("config: unknown parameter '" + k + "' for " + c.id);
      }
    } else {
      throw std::invalid_argument("config: unknown section [" + sec + "]");
    }
  }
  if (c.shards == 0) throw std::invalid_argument("config: shards >= 1");
  auto get = [&](const char* sec, const std::string& key) -> const std::string* {
    auto s = f.sections.find(sec);
    if (s == f.sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };
  for (const auto& g : info.grid) {
    const std::string* v = get("grid", g.name);
    c.grid.push_back({g.name, split_list(v ? *v : g.value)});
  }
  for (const auto& p : info.params) {
    const std::string* v = get("params", p.name);
    c.params[p.name] = v ? *v : p.value;
  }
  return c;
}

const std::vector<std::string>& ExperimentConfig::axis(const std::string& name) const {
  for (const auto& [k, v] : grid)
    if (k == name) return v;
  throw std::invalid_argument("config: no grid axis " + name);
}

std::vector<double> ExperimentConfig::axis_numbers(const std::string& name) const {
  std::vector<double> out;
  for (const auto& s : axis(name)) out.push_back(parse_number(s, name));
  return out;
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("config: no parameter " + key);
  return it->second;
}

double ExperimentConfig::number(const std::string& key) const { return parse_number(text(key), key); }

std::uint64_t ExperimentConfig::integer(const std::string& key) const {
  double v = number(key);
  if (v < 0) throw std::invalid_argument(key + " must be >= 0");
  return std::uint64_t(v);
}

bool ExperimentConfig::flag(const std::string& key) const {
  const auto& v = text(key);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument(key + ": expected a boolean");
}

std::size_t ExperimentConfig::points() const {
  std::size_t n = 1;
  for (const auto& [k, v] : grid) n *= v.size();
  return n;
}

std::map<std::string, std::string> ExperimentConfig::point(std::size_t i) const {
  std::map<std::string, std::string> out;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    out[it->first] = it->second[i % it->second.size()];
    i /= it->second.size();
  }
  return out;
}

std::string ExperimentConfig::canonical() const {
  std::string s = "id=" + id + "\nshots=" + std::to_string(shots) + "\nseed=" + std::to_string(seed) + "\n";
  // shards and out do not change results and stay out of the hash
  for (const auto& [k, v] : grid) {
    s += "grid." + k + "=";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    s += "\n";
  }
  for (const auto& [k, v] : params) s += "params." + k + "=" + v + "\n";
  return s;
}

}  // namespace rotft

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

#ifndef ROTFT_EXPERIMENTS_H_
#define ROTFT_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotft/config.h"

namespace rotft {

struct KeySpec {
  std::string name;
  std::string value;  // default
  std::string help;
};

struct ExperimentInfo {
  std::string id;
  std::string summary;
  std::uint64_t shots = 0;
  std::vector<KeySpec> grid;
  std::vector<KeySpec> params;
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo& experiment_info(const std::string& id);  // throws std::invalid_argument

// One acceptance threshold evaluated on a summary value.
struct Check {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass() const { return value >= lo && value <= hi; }
};
nlohmann::json check_to_json(const Check& c);

struct RunResult {
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;  // in point order
  std::vector<std::uint64_t> point_seeds;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Check> checks;
  bool partial = false;
  std::vector<std::string> errors;
};

// Seed of grid point i; independent of the shard layout.
std::uint64_t point_seed(std::uint64_t master, std::size_t i);

// Evaluates every grid point (points spread round-robin over shards, shards
// pulled by worker threads) and then the experiment summary.
RunResult run_experiment(const ExperimentConfig& cfg);

// Writes results.csv, summary.json and manifest.json under `dir`.
void write_artifacts(const ExperimentConfig& cfg, const RunResult& r, const std::string& dir,
                     double wall_seconds);

struct VerifyReport {
  bool ok = true;
  std::vector<Check> checks;
  std::vector<std::string> problems;
};
// Re-evaluates the stored checks and the config hash of a manifest.
VerifyReport verify_manifest(const std::string& path);

std::string git_revision();

// Weighted least squares y = a x^2 + b x^3; returns a.
double quadratic_coefficient(const std::vector<double>& x, const std::vector<double>& y,
                             const std::vector<double>& se);

}  // namespace rotft

#endif  // ROTFT_EXPERIMENTS_H_

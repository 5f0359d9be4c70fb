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

// rotft: experiment runner.
//   rotft run <experiment> [--config FILE] [--shots N] [--seed S] [--out DIR] [--shards K]
//   rotft verify <manifest.json>
//   rotft list

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rotft/config.h"
#include "rotft/experiments.h"

namespace {

int do_run(const std::string& id, const std::string& config_path, std::optional<std::uint64_t> shots,
           std::optional<std::uint64_t> seed, const std::string& out, std::optional<std::size_t> shards) {
  rotft::ConfigFile f;
  if (!config_path.empty()) f = rotft::ConfigFile::load(config_path);
  auto& run = f.sections["run"];
  if (run.count("id") && run["id"] != id) {
    std::cerr << "config is for " << run["id"] << ", not " << id << "\n";
    return 2;
  }
  run["id"] = id;
  if (shots) run["shots"] = std::to_string(*shots);
  if (seed) run["seed"] = std::to_string(*seed);
  if (shards) run["shards"] = std::to_string(*shards);
  if (!out.empty()) run["out"] = out;
  auto cfg = rotft::ExperimentConfig::from(f);

  auto t0 = std::chrono::steady_clock::now();
  auto res = rotft::run_experiment(cfg);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rotft::write_artifacts(cfg, res, cfg.out, wall);

  std::printf("%s: %zu points, %zu rows, config %s, %.1f s -> %s\n", cfg.id.c_str(), cfg.points(),
              res.rows.size(), cfg.hash().c_str(), wall, cfg.out.c_str());
  for (const auto& c : res.checks)
    std::printf("  %-28s %s  %.6g in [%.6g, %.6g]\n", c.name.c_str(), c.pass() ? "PASS" : "FAIL",
                c.value, c.lo, c.hi);
  for (const auto& e : res.errors) std::fprintf(stderr, "  error: %s\n", e.c_str());
  return res.partial ? 1 : 0;
}

int do_verify(const std::string& path) {
  auto rep = rotft::verify_manifest(path);
  for (const auto& c : rep.checks)
    std::printf("  %-28s %s  %.6g in [%.6g, %.6g]\n", c.name.c_str(), c.pass() ? "PASS" : "FAIL",
                c.value, c.lo, c.hi);
  for (const auto& p : rep.problems) std::printf("  problem: %s\n", p.c_str());
  std::printf("%s\n", rep.ok ? "OK" : "FAILED");
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotft experiment runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a named experiment");
  std::string id, config_path, out;
  std::uint64_t shots = 0, seed = 0;
  std::size_t shards = 0;
  run->add_option("experiment", id, "experiment id (see `rotft list`)")->required();
  run->add_option("--config", config_path, "key = value config file");
  auto* o_shots = run->add_option("--shots", shots, "shots per point");
  auto* o_seed = run->add_option("--seed", seed, "64-bit master seed");
  auto* o_shards = run->add_option("--shards", shards, "number of shards");
  run->add_option("--out", out, "output directory");

  auto* verify = app.add_subcommand("verify", "re-check the thresholds stored in a manifest");
  std::string manifest;
  verify->add_option("manifest", manifest, "manifest.json")->required();

  auto* list = app.add_subcommand("list", "list experiments and their keys");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) {
      std::optional<std::uint64_t> sh, se;
      std::optional<std::size_t> sd;
      if (*o_shots) sh = shots;
      if (*o_seed) se = seed;
      if (*o_shards) sd = shards;
      return do_run(id, config_path, sh, se, out, sd);
    }
    if (*verify) return do_verify(manifest);
    if (*list) {
      for (const auto& e : rotft::experiment_registry()) {
        std::printf("%s  (%s)\n", e.id.c_str(), e.summary.c_str());
        for (const auto& g : e.grid) std::printf("  grid.%s = %s\n", g.name.c_str(), g.value.c_str());
        for (const auto& p : e.params) std::printf("  params.%s = %s\n", p.name.c_str(), p.value.c_str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rotft: %s\n", e.what());
    return 2;
  }
  return 0;
}

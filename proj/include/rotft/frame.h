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

#ifndef ROTFT_FRAME_H_
#define ROTFT_FRAME_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rotft/circuit.h"
#include "rotft/rng.h"

namespace rotft {

// Pauli frames of 64 * words shots; x/z indexed [qubit * words + w].
struct FrameBatch {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> x, z;
  // Optional per-shot label written by slot hooks (e.g. a b-string class).
  std::vector<std::uint32_t> tags;

  std::size_t shots() const { return 64 * words; }
  void apply(std::size_t q, char letter, std::size_t shot);
};

using SlotHook = std::function<void(FrameBatch&, Rng&)>;
using HookMap = std::map<int, SlotHook>;

// Detector and observable flips relative to the noiseless reference.
struct BatchResult {
  std::size_t shots = 0;  // valid shots; bits above are padding
  std::size_t words = 0;
  std::vector<std::uint64_t> det;   // [detector * words + w]
  std::vector<std::uint64_t> obs;   // [observable * words + w]
  std::vector<std::uint64_t> pass;  // AND of post-selected detectors being 0
  std::vector<std::uint32_t> tags;
  bool det_bit(std::size_t d, std::size_t s) const { return (det[d * words + s / 64] >> (s % 64)) & 1; }
  bool obs_bit(std::size_t o, std::size_t s) const { return (obs[o * words + s / 64] >> (s % 64)) & 1; }
  bool pass_bit(std::size_t s) const { return (pass[s / 64] >> (s % 64)) & 1; }
};

struct ShotStats {
  std::uint64_t shots = 0;
  std::uint64_t passed = 0;
  std::vector<std::uint64_t> det_fires;       // over all shots
  std::vector<std::uint64_t> obs_flips_pass;  // among passing shots
  std::vector<std::uint64_t> tag_shots;       // per tag value (< 64)
  std::vector<std::uint64_t> tag_passed;
  void merge(const ShotStats& o);
  double pass_rate() const { return shots ? double(passed) / double(shots) : 0.0; }
  // Flip rate of observable o among passing shots, and its binomial SE.
  double obs_rate(std::size_t o) const;
  double obs_se(std::size_t o) const;
};

struct ShotRecord {
  std::vector<std::uint8_t> detectors;
  std::vector<std::uint8_t> observables;
  bool pass = true;
  std::uint32_t tag = 0;
};

class FrameSampler {
 public:
  static constexpr std::size_t kBlockShots = 1024;

  // Rejects circuits with Kraus ops or with detectors / observables that are
  // not deterministic under zero noise.
  explicit FrameSampler(NoisyCircuit c);

  const NoisyCircuit& circuit() const { return c_; }
  const std::vector<std::uint8_t>& reference() const { return ref_; }
  const std::vector<std::uint8_t>& detector_reference() const { return det_ref_; }
  const std::vector<std::uint8_t>& observable_reference() const { return obs_ref_; }

  // One block of shots; `noise` false skips all noise ops.
  BatchResult run_batch(std::size_t words, Rng& rng, const HookMap& hooks = {},
                        bool noise = true) const;

  // Blocks of kBlockShots seeded by derive_seed(seed, stream, block), spread
  // over thread_count() workers and merged in block order.
  ShotStats sample(std::uint64_t shots, std::uint64_t seed, const HookMap& hooks = {},
                   std::uint64_t stream = 0) const;
  std::vector<ShotRecord> sample_records(std::uint64_t shots, std::uint64_t seed,
                                         const HookMap& hooks = {}) const;

 private:
  struct Compiled {
    std::vector<double> cum;  // conditional cumulative distribution over Paulis
    double total = 0.0;
    std::vector<std::vector<std::pair<std::size_t, char>>> terms;  // MPP / PAULI
  };
  NoisyCircuit c_;
  std::vector<Compiled> comp_;
  std::vector<std::uint8_t> ref_, det_ref_, obs_ref_;
};

ShotStats run_monte_carlo(const NoisyCircuit& c, std::uint64_t shots, std::uint64_t seed,
                          const HookMap& hooks = {});

// Bit-packed binary dump: magic "RTFS", u64 shots, u32 n_det, u32 n_obs,
// then per shot ceil((n_det + n_obs + 1) / 8) bytes (detectors, observables,
// pass flag; LSB first).
void write_shot_records(const std::string& path, const std::vector<ShotRecord>& recs);
std::vector<ShotRecord> read_shot_records(const std::string& path);

}  // namespace rotft

#endif  // ROTFT_FRAME_H_

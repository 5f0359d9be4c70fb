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

#ifndef ROTFT_RNG_H_
#define ROTFT_RNG_H_

#include <cstdint>
#include <random>

namespace rotft {

std::uint64_t splitmix64(std::uint64_t x);

// Counter-mode seed for stream `index` of `stream` under `master`. Blocks of
// shots use this so results do not depend on how blocks map to threads.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return Rng(derive_seed(master, stream, index));
}

// ROTFT_THREADS if set and positive, else hardware concurrency (>= 1).
unsigned thread_count();

}  // namespace rotft

#endif  // ROTFT_RNG_H_

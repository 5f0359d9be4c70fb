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

#ifndef ROTFT_DENSITY_SIM_H_
#define ROTFT_DENSITY_SIM_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "rotft/circuit.h"
#include "rotft/dense.h"

namespace rotft {

// Exact simulation of a NoisyCircuit on <= 10 qubits. Measurement branches
// are keyed by the running parities of all detectors and observables and
// merged when keys coincide, so the number of branches stays small.
class DensitySimulator {
 public:
  using Key = std::vector<std::uint8_t>;  // detectors then observables

  // Reference parities default to a noiseless tableau run of the circuit
  // with its noise (including Kraus ops) removed.
  explicit DensitySimulator(const NoisyCircuit& c);
  DensitySimulator(const NoisyCircuit& c, Key reference);

  // Runs the circuit from |0...0>.
  void run();

  const std::map<Key, Mat>& branches() const { return branches_; }
  const Key& reference() const { return ref_; }
  // Distribution over flip keys (value XOR reference).
  std::map<Key, double> distribution() const;
  double pass_probability() const;
  // Unnormalized sum of branches passing every post-selected detector.
  Mat passing_state() const;
  // Pr(observable o flipped | pass).
  double observable_flip_given_pass(std::size_t o) const;

 private:
  bool passes(const Key& k) const;
  const NoisyCircuit& c_;
  Key ref_;
  std::map<Key, Mat> branches_;
};

// rho -> U rho U^dag for U acting on `qubits` (first listed = most
// significant), qubit 0 being the most significant bit of the register.
Mat apply_local_unitary(const Mat& rho, const Mat& u, const std::vector<std::size_t>& qubits,
                        std::size_t n);
Mat apply_local_kraus(const Mat& rho, const std::vector<Mat>& ks,
                      const std::vector<std::size_t>& qubits, std::size_t n);
// Traces out every qubit not in `keep` (kept in increasing order).
Mat reduce_to_qubits(const Mat& rho, std::size_t n, const std::vector<std::size_t>& keep);

}  // namespace rotft

#endif  // ROTFT_DENSITY_SIM_H_

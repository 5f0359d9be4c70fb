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

#ifndef ROTFT_TABLEAU_H_
#define ROTFT_TABLEAU_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rotft/circuit.h"
#include "rotft/rng.h"

namespace rotft {

// Stabilizer tableau with destabilizers (rows 0..n-1) and stabilizers
// (rows n..2n-1), starting in |0...0>.
class Tableau {
 public:
  explicit Tableau(std::size_t n);
  std::size_t n_qubits() const { return n_; }

  void h(std::size_t a);
  void s(std::size_t a);
  void s_dag(std::size_t a);
  void cx(std::size_t a, std::size_t b);
  void cz(std::size_t a, std::size_t b);
  void sqrt_zz(std::size_t a, std::size_t b);
  void apply_pauli(const PauliOperator& p);

  // +1 / -1 if P has a definite value, 0 if the outcome is random.
  int peek(const PauliOperator& p) const;
  // Projective measurement of a Hermitian Pauli; returns the outcome bit
  // (1 for eigenvalue -1). Random outcomes come from `rng`, or are 0 when
  // rng is null.
  bool measure(const PauliOperator& p, Rng* rng, bool* was_random = nullptr);
  void reset(std::size_t a, Rng* rng);
  void reset_x(std::size_t a, Rng* rng);

  // Stabilizer generator i (0 <= i < n) with its sign.
  PauliOperator stabilizer(std::size_t i) const;

 private:
  std::uint64_t* xr(std::size_t r) { return &x_[r * w_]; }
  std::uint64_t* zr(std::size_t r) { return &z_[r * w_]; }
  const std::uint64_t* xr(std::size_t r) const { return &x_[r * w_]; }
  const std::uint64_t* zr(std::size_t r) const { return &z_[r * w_]; }
  bool anticommutes(std::size_t r, const PauliOperator& p) const;
  // Row h <- row i * row h (phase tracked mod 4).
  void rowsum(std::size_t h, std::size_t i);

  std::size_t n_, w_;
  std::vector<std::uint64_t> x_, z_;
  std::vector<std::uint8_t> r_;  // i-exponent of each row, in {0, 1, 2, 3}
};

// Executes a circuit on a tableau. Noise ops are sampled when `noisy`
// (Kraus ops are rejected). Returns the measurement record.
std::vector<std::uint8_t> run_tableau(const NoisyCircuit& c, Rng* rng, bool noisy);

// Noiseless reference: random outcomes fixed to 0.
std::vector<std::uint8_t> reference_record(const NoisyCircuit& c);

}  // namespace rotft

#endif  // ROTFT_TABLEAU_H_

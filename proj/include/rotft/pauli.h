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

#ifndef ROTFT_PAULI_H_
#define ROTFT_PAULI_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rotft {

// n-qubit Pauli operator i^phase * (x|z), packed 64 qubits per word.
// Per qubit (x,z): (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n);

  // Accepts an optional sign prefix "+", "-", "i", "-i", "+i" followed by
  // one of "IXYZ_" per qubit.
  static PauliOperator from_string(std::string_view s);
  static PauliOperator single(std::size_t n, std::size_t q, char p);
  // Product of `p` on every listed qubit.
  static PauliOperator on(std::size_t n, const std::vector<std::size_t>& qubits,
                          char p);

  std::size_t n_qubits() const { return n_; }
  std::size_t n_words() const { return xs_.size(); }
  bool x(std::size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
  bool z(std::size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
  void set(std::size_t q, bool x, bool z);
  void set(std::size_t q, char p);
  char at(std::size_t q) const;

  // Exponent k of the global factor i^k, in [0, 4).
  int phase() const { return phase_; }
  void set_phase(int k) { phase_ = ((k % 4) + 4) % 4; }

  const std::vector<std::uint64_t>& xs() const { return xs_; }
  const std::vector<std::uint64_t>& zs() const { return zs_; }

  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  bool is_identity() const;  // ignores phase
  bool commutes(const PauliOperator& o) const;
  // Hermitian iff the phase is real.
  bool is_hermitian() const { return (phase_ & 1) == 0; }

  PauliOperator operator*(const PauliOperator& o) const;
  PauliOperator& operator*=(const PauliOperator& o);
  PauliOperator operator-() const;

  // Same Pauli letters, phase ignored.
  bool same_letters(const PauliOperator& o) const;
  bool operator==(const PauliOperator& o) const;
  bool operator!=(const PauliOperator& o) const { return !(*this == o); }

  // Canonical order used for tie-breaking: weight, then sorted support,
  // then letters X<Y<Z position by position. Phase ignored.
  static bool canonical_less(const PauliOperator& a, const PauliOperator& b);

  std::string str() const;
  // Letters only, no sign.
  std::string letters() const;

  // Restriction to / embedding from a subset of qubits.
  PauliOperator restrict_to(const std::vector<std::size_t>& qubits) const;
  PauliOperator embed(std::size_t n, const std::vector<std::size_t>& qubits) const;

 private:
  std::size_t n_ = 0;
  int phase_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
};

// Exponent of i picked up by a*b relative to the letter-wise product.
int product_phase(const PauliOperator& a, const PauliOperator& b);

// All 4^n Paulis on n qubits in base-4 order (qubit 0 fastest), I,X,Y,Z.
std::vector<PauliOperator> all_paulis(std::size_t n);

// Index of a phase-free Pauli in the all_paulis order.
std::size_t pauli_index(const PauliOperator& p);

}  // namespace rotft

#endif  // ROTFT_PAULI_H_

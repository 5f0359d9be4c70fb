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

#ifndef ROTFT_CODE_H_
#define ROTFT_CODE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotft/dense.h"
#include "rotft/pauli.h"

namespace rotft {

struct StabilizerCode {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<PauliOperator> generators;
  std::vector<PauliOperator> gauge_ops;
  PauliOperator logical_z;
  PauliOperator logical_x;
  std::size_t distance = 0;
  // Grid placement for surface codes: (row, col) of each data qubit.
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t t() const { return distance / 2; }  // ceil((d-1)/2)
  // Throws std::logic_error on any broken invariant.
  void validate() const;
  // Bit i set iff p anticommutes with generators[i].
  std::vector<bool> syndrome(const PauliOperator& p) const;
  std::size_t qubit_at(std::size_t row, std::size_t col) const;
};

enum class CodeId { kFourOneOneTwo, kRotatedSurface };

// FourOneOneTwo ignores params. RotatedSurface takes {dz, dx}: dz columns
// (horizontal logical Z along row 0) and dx rows. Qubits are indexed column
// major, index = col * dx + row.
StabilizerCode build_code(CodeId id, const std::vector<std::size_t>& params = {});
StabilizerCode four_one_one_two();
StabilizerCode rotated_surface(std::size_t dz, std::size_t dx);
// Adjoins one gauge operator to the stabilizer group.
StabilizerCode gauge_fixed(const StabilizerCode& code, const PauliOperator& gauge);

// A surface-code plaquette: band (row, col) covers rows row..row+1 and
// columns col..col+1 (clipped at the boundary).
struct Plaquette {
  int row = 0;
  int col = 0;
  char type = 'X';
  // Corner qubits in the order TL, TR, BL, BR; -1 when absent.
  int corners[4] = {-1, -1, -1, -1};
  std::vector<std::size_t> qubits() const;
};
std::vector<Plaquette> surface_plaquettes(std::size_t dz, std::size_t dx);

nlohmann::json code_to_json(const StabilizerCode& code);
StabilizerCode code_from_json(const nlohmann::json& j);

// Stabilizer group Pi_0 = prod (I + S_i)/2 as a dense matrix (n <= 12).
Mat code_projector(const StabilizerCode& code);
// Orthonormal basis of the code space, columns = |0>_L, |1>_L (k = 1).
Mat logical_basis(const StabilizerCode& code);
// Projector on the syndrome subspace s.
Mat syndrome_projector(const StabilizerCode& code, const std::vector<bool>& s);

struct Filter {
  StabilizerCode code;
  std::size_t r = 0;
  std::vector<PauliOperator> representatives;
  std::optional<Mat> projector;  // materialized for n <= 12
  std::size_t rank() const { return representatives.size() << code.k; }
  // True iff the syndrome of p is one of the representatives' syndromes.
  bool contains_syndrome(const std::vector<bool>& s) const;
};

// Quotient set of Paulis of weight <= r modulo the centralizer, smallest
// member in PauliOperator::canonical_less order per class.
Filter filter_projector(const StabilizerCode& code, std::size_t r, bool qed = true);

enum class DecodeMode { kQEC, kQED };

struct DecodeResult {
  Mat logical;   // 2^k x 2^k logical density matrix (normalized when pass)
  Mat physical;  // corrected (QEC) or projected (QED) physical state
  bool pass = true;
  double weight = 1.0;  // Tr(Pi_0 rho) for QED, 1 for QEC
};

// Minimum-weight recovery per syndrome, ties broken by canonical_less.
std::map<std::vector<bool>, PauliOperator> recovery_table(const StabilizerCode& code);
DecodeResult ideal_decode(const Mat& rho, const StabilizerCode& code, DecodeMode mode,
                          double tol = 1e-12);
// Logical reduced state for an operator supported on the code space.
Mat logical_state(const Mat& rho, const StabilizerCode& code);
// Subsystem code with gauge_ops = {g_Z, g_X}: logical state with the gauge
// qubit traced out.
Mat subsystem_logical_state(const Mat& rho, const StabilizerCode& code);

}  // namespace rotft

#endif  // ROTFT_CODE_H_

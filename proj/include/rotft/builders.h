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

#ifndef ROTFT_BUILDERS_H_
#define ROTFT_BUILDERS_H_

#include <array>
#include <cstddef>
#include <vector>

#include "rotft/channel.h"
#include "rotft/circuit.h"
#include "rotft/code.h"

namespace rotft {

using Quad = std::array<std::size_t, 4>;

// [[4,1,1,2]] layout on circuit qubits q[0..3] = code qubits 0..3
// (q = 2 * col + row on the 2x2 grid).
void append_prep_4112(NoisyBuilder& b, const Quad& q);

struct QedRecord {
  std::size_t z_left = 0;    // Z gauge on code qubits 0,1
  std::size_t z_right = 0;   // Z gauge on code qubits 2,3
  std::size_t x_top = 0;     // X gauge on code qubits 0,2 (= g_X)
  std::size_t x_bottom = 0;  // X gauge on code qubits 1,3
};
// ZX-type QED with two reused ancillas. When `detectors` is set, adds the
// two Z gauge detectors (valid while g_Z is fixed) and the S_X detector.
QedRecord append_qed_zx_4112(NoisyBuilder& b, const Quad& q, const std::array<std::size_t, 2>& anc,
                             bool detectors = true);

// Four qubits, |+>_L |0>_g.
NoisyCircuit build_prep_4112(double p = 0.0);
// Six qubits: preparation followed by ZX-QED.
NoisyCircuit build_qed_zx_4112(double p = 0.0);

// Data then ancilla placement for a rotated surface code patch.
struct SurfaceLayout {
  std::size_t dz = 0, dx = 0;
  std::vector<Plaquette> plaquettes;
  std::vector<std::size_t> data;  // circuit qubit of code qubit i
  std::vector<std::size_t> anc;   // circuit qubit of plaquette j

  // Data qubits first_qubit.., ancillas right after.
  static SurfaceLayout make(std::size_t dz, std::size_t dx, std::size_t first_qubit = 0);
  std::size_t n_used() const { return data.size() + anc.size(); }
  std::size_t qubit(std::size_t row, std::size_t col) const { return data[col * dx + row]; }
  // Maps a code Pauli to an n-qubit circuit Pauli.
  PauliOperator lift(const PauliOperator& code_op, std::size_t n) const;
  PauliOperator plaquette_op(std::size_t j, std::size_t n) const;
};

// One noisy syndrome-extraction round. Z plaquettes use CX order TL, BL,
// TR, BR and X plaquettes TL, TR, BL, BR, so hook errors run perpendicular
// to the logical operator of the same type. Data resets in `reset_z` /
// `reset_x` share the first layer. Returns one measurement index per
// plaquette. With `hadamard_basis`, X-basis preparation and readout use
// R + H and H + M (two extra noisy layers), as in a CX/H gate set.
std::vector<std::size_t> append_se_round(NoisyBuilder& b, const SurfaceLayout& L,
                                         const std::vector<std::size_t>& reset_z = {},
                                         const std::vector<std::size_t>& reset_x = {},
                                         bool hadamard_basis = false);
// Noiseless round of Pauli-product measurements, one per plaquette.
std::vector<std::size_t> append_perfect_round(NoisyCircuit& c, const SurfaceLayout& L);

// Memory circuit: data in |0>, `rounds` noisy rounds, final data readout.
// Detectors on every comparable plaquette; observable = logical Z.
NoisyCircuit build_surface_rounds(std::size_t dz, std::size_t dx, std::size_t rounds, double p);

// Expansion of the [[4,1,1,2]] code into a distance-d rotated surface
// code. A reference qubit R, Bell-paired with the logical qubit right after
// preparation, turns the post-QED logical channel into observables.
struct ExpansionSpec {
  std::size_t d = 3;        // 3 or 5
  std::size_t rounds = 3;   // noisy rounds, >= 2
  double p = 1e-3;
  bool with_gate = true;    // apply the phi = pi/4 gate (else phi = 0)
  PauliChannel gate_noise = PauliChannel::identity(2);
  bool idle_noise = true;
  bool fast_layer_idle = true;  // idle noise also in reset / H layers
  bool hadamard_basis = true;
  bool final_perfect_round = true;
};
struct ExpansionCircuit {
  NoisyCircuit circuit;
  SurfaceLayout layout;
  Quad block;           // circuit qubits of the [[4,1,1,2]] data
  std::size_t ref = 0;  // reference qubit
  // Observables: 0 = Z_L Z_R, 1 = image of X_L X_R, 2 = their product.
};
ExpansionCircuit build_expansion(const ExpansionSpec& spec);

// Projection scheme on a (m k) x (m k + 1) patch. Slot 0 sits right after
// the |+>_L preparation round, where per-shot b-strings are applied.
struct ProjectionSpec {
  std::size_t m = 2;
  std::size_t k = 3;
  double p = 1e-3;
  PauliChannel gate_noise = PauliChannel::identity(2);
  std::size_t qed_rounds = 3;
  // Plaquette rows -1 .. region_bands - 2 (the weight-2 boundary band
  // counts as the first). With close_region, the X plaquettes of the next
  // row join too, so a Z hook from the last row is never seen by a single
  // region detector.
  std::size_t region_bands = 3;
  bool close_region = true;
  bool idle_noise = true;
  bool fast_layer_idle = true;
  bool hadamard_basis = true;
};
struct ProjectionCircuit {
  NoisyCircuit circuit;
  SurfaceLayout layout;
  std::vector<std::vector<std::size_t>> groups;  // circuit qubits of each rotation group
};
ProjectionCircuit build_projection_circuit(const ProjectionSpec& spec);

}  // namespace rotft

#endif  // ROTFT_BUILDERS_H_

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

#ifndef ROTFT_ESTIMATORS_H_
#define ROTFT_ESTIMATORS_H_

#include <cstddef>
#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "rotft/builders.h"
#include "rotft/channel.h"
#include "rotft/lindblad.h"

namespace rotft {

// |r_phi>_L on the [[4,1,1,2]] code: noisy |+>_L preparation, the physical
// R_ZZ(phi) on code qubits 0 and 2 as a dense Kraus map, then noisy ZX-QED.
// Exact density-matrix simulation; the passing state is projected on the
// stabilizer space and compared with exp(i phi Z)|+> on the logical qubit.
struct RotationStateResult {
  double phi = 0.0;
  double p = 0.0;
  double pass_prob = 0.0;
  double d_tr = 0.0;
  double gate_postselect = 1.0;  // ancilla gate only
};
RotationStateResult rotation_state_4112(GateKind kind, double phi, double p,
                                        double gamma_per_p = 2e7);

// Logical Pauli channel of the expansion circuit from the three
// Bell-reference observables; every non-identity logical Pauli flips
// exactly two of them.
struct LogicalChannelEstimate {
  std::uint64_t shots = 0;
  std::uint64_t passed = 0;
  double pass_prob = 0.0;
  double flips[3] = {0, 0, 0};
  double flips_se[3] = {0, 0, 0};
  double px = 0.0, py = 0.0, pz = 0.0;  // logical error after the gate
  double r = 0.0;                       // px + py + pz
  double r_se = 0.0;
  double avg_infidelity = 0.0;          // 2 r / 3
  double avg_infidelity_se = 0.0;
  double diamond = 0.0;                 // 1.5 r_avg for a one-qubit Pauli channel
};
LogicalChannelEstimate estimate_logical_channel(const ExpansionCircuit& e, std::uint64_t shots,
                                                std::uint64_t seed);

struct ExpansionConfig {
  std::size_t d = 3;
  std::size_t rounds = 3;
  double p = 1e-3;
  GateKind gate = GateKind::kDirect;
  double gamma_per_p = 2e7;
  bool idle_noise = true;
};
ExpansionSpec expansion_spec(const ExpansionConfig& cfg);

nlohmann::json logical_to_json(const LogicalChannelEstimate& e);

}  // namespace rotft

#endif  // ROTFT_ESTIMATORS_H_

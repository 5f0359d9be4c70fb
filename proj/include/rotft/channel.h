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

#ifndef ROTFT_CHANNEL_H_
#define ROTFT_CHANNEL_H_

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotft/dense.h"
#include "rotft/lindblad.h"

namespace rotft {

// Diagonal Pauli channel; probs indexed in all_paulis order (identity first).
struct PauliChannel {
  std::size_t n_qubits = 1;
  std::vector<double> probs;

  static PauliChannel identity(std::size_t n);
  static PauliChannel from_entries(std::size_t n,
                                   const std::vector<std::pair<std::string, double>>& e);
  double prob(const PauliOperator& p) const { return probs.at(pauli_index(p)); }
  double prob(const std::string& letters) const;
  void validate(double tol = 1e-12) const;
  // Convolution over the Pauli group.
  PauliChannel compose(const PauliChannel& o) const;
  Mat superop() const;
  std::vector<std::pair<std::string, double>> entries() const;
  // Process (entanglement) fidelity = identity probability.
  double process_fidelity() const { return probs[0]; }
};

PauliChannel depolarizing(std::size_t n, double p);

enum class FactorSide {
  kErrorAfter,   // M = E o U (default)
  kErrorBefore,  // M = U o E
};

struct ExtractedGateChannel {
  GateKind kind = GateKind::kDirect;
  double phi = 0.0;
  double gamma = 0.0;
  Mat process;                // conditional data-qubit superoperator (renormalized)
  Mat error_superop;          // residual error after factoring out exp(i phi ZZ)
  std::vector<Mat> kraus;     // Kraus set of the residual error
  PauliChannel pauli_twirled;
  double postselect_prob = 1.0;
};

// Process matrix of the two rotated data qubits from evolve_full; the
// ancilla (if any) starts in g and is post-selected on g when `postselect`.
ExtractedGateChannel extract_channel(const LindbladModel& model, bool postselect = true,
                                     FactorSide side = FactorSide::kErrorAfter);

// Pauli twirl of an n-qubit superoperator via the PTM diagonal. Negative
// entries above -clamp are zeroed; below that the extraction fails.
PauliChannel pauli_twirl(const Mat& superop, int n_qubits, double clamp = 1e-9);

// Circuit-level CNOT - RZ(phi) - CNOT decomposition of exp(i phi Z0 Z1) with
// two-qubit depolarizing p after each CNOT and one-qubit depolarizing p after
// the rotation, composed exactly then factored and twirled.
ExtractedGateChannel naive_circuit_channel(double phi, double p);

// Lindblad extraction at gamma = gamma_per_p * p.
ExtractedGateChannel gate_channel(GateKind kind, double phi, double p,
                                  double gamma_per_p = 2e7, const GateParams& base = {});

double average_fidelity(const Mat& superop, int dim);
double entanglement_fidelity(const Mat& superop, int dim);

struct RotationDistance {
  double diamond = 0.0;         // q |sin d| sqrt(1 + sin^2 d)
  double trace_lower = 0.0;     // q |sin d|
  double avg_infidelity = 0.0;  // (2/3) q sin^2 d
};

// Mixture (1-q) R_0 + q R_delta of single-qubit Z rotations exp(i delta Z).
RotationDistance diamond_distance_rotation(double q, double delta);
// Exact for Pauli channels: eps = (1 + 2^-n) r.
double diamond_from_infidelity(double r, int n_qubits);

nlohmann::json channel_to_json(const ExtractedGateChannel& c);
PauliChannel pauli_channel_from_json(const nlohmann::json& j);

Mat rzz_unitary(double phi);  // exp(i phi Z (x) Z)

}  // namespace rotft

#endif  // ROTFT_CHANNEL_H_

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

#ifndef ROTFT_LINDBLAD_H_
#define ROTFT_LINDBLAD_H_

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotft/code.h"
#include "rotft/dense.h"

namespace rotft {

struct Jump {
  std::string name;  // e.g. "eg:D0", "fe:A", "phi:A"
  Mat op;
  double rate = 0.0;
};

struct Stage {
  std::string label;
  double duration = 0.0;
  Mat hamiltonian;
  // active[j] says whether jump j acts during this stage; empty = all.
  std::vector<bool> active;
  bool jump_active(std::size_t j) const { return active.empty() || active[j]; }
};

struct GateParams {
  double chi = 2.0 * 3.14159265358979323846 * 5e6;    // rad/s
  double omega = 2.0 * 3.14159265358979323846 * 20e6;  // rad/s
  double gamma = 0.0;                                   // s^-1, shared by all jumps
  bool excitation = false;                              // include J_{g->e}
  double gamma_up = 0.0;
  double delta_f = 2.0;       // weight of |f><f| in the qutrit dephasing jump
  double stage_idle = 0.0;    // idle time inserted between ancilla stages, s
  bool data_noise_all_stages = false;  // ancilla gate: data jumps outside 2-4
};

enum class GateKind { kDirect, kAncilla, kNaive };
const char* gate_kind_name(GateKind k);
GateKind parse_gate_kind(const std::string& s);

struct LindbladModel {
  std::vector<int> dims;
  std::vector<Stage> stages;
  std::vector<Jump> jumps;
  GateKind kind = GateKind::kDirect;
  double phi = 0.0;
  int ancilla = -1;                // subsystem index of the qutrit, or -1
  std::vector<int> data;           // subsystems carrying the code qubits
  std::vector<int> rotated;        // positions (in `data`) of the ZZ pair

  int dim() const;
  double total_time() const;
  void validate() const;  // throws std::invalid_argument
};

// full_register = true puts all four code qubits in the model (for the FT
// checker); otherwise only the two rotated data qubits D0, D2 are present.
LindbladModel direct_gate_model(double phi, const GateParams& gp, bool full_register = false);
LindbladModel ancilla_gate_model(double phi, const GateParams& gp, bool full_register = false);
LindbladModel naive_gate_model(double phi, const GateParams& gp, bool full_register = false);
LindbladModel gate_model(GateKind kind, double phi, const GateParams& gp,
                         bool full_register = false);

// Vectorized generator of one stage (column stacking).
Mat lindblad_generator(const LindbladModel& m, std::size_t stage);
// RK4 one-step map raised to the required power; exact equivalent of
// fixed-step RK4 with (||H||_2 + sum gamma) h <= 1e-3.
Mat stage_propagator(const LindbladModel& m, std::size_t stage);
// Full superoperator propagator (dim <= 16).
Mat full_propagator(const LindbladModel& m);
Mat evolve_full(const LindbladModel& m, const Mat& rho0);
// Noiseless unitary of the whole schedule.
Mat schedule_unitary(const LindbladModel& m);

struct DysonPropagator {
  LindbladModel model;
  int order = 1;
  int quadrature_points = 201;  // per stage
};

// Sum of Dyson orders 0..order applied to rho0.
Mat evolve_truncated(const DysonPropagator& p, const Mat& rho0);
// Single Dyson order q (q <= 2).
Mat dyson_term(const DysonPropagator& p, const Mat& rho0, int q);

struct FtVerdict {
  bool pass = false;
  bool cond1 = false;
  bool cond2 = false;
  double cond1_residual = 0.0;
  double cond2_residual = 0.0;
  int r = 0;
  int s = 0;
  std::string worst;  // which order/jump produced the largest residual
};

// Checks both conditions of the error-structure-tailored FT definition for
// the gate on a gauge-fixed code. Every Dyson order q <= s is checked on its
// own, with order-1 terms per jump at unit rate and normalized by the
// schedule length.
FtVerdict check_ft_gate(const LindbladModel& model, const StabilizerCode& code,
                        const Mat& ideal_logical, int r, int s, double tol = 1e-9,
                        int quadrature_points = 201);

struct JumpReport {
  std::vector<PauliOperator> support;  // Pauli support of the propagated operator
  bool support_in_filter = false;
  double jump_cond1_residual = 0.0;
  double jump_cond2_residual = 0.0;
  double jump_code_weight = 0.0;  // ||Pi_0 K rho K^dag Pi_0||_tr, max over inputs
  double back_cond1_residual = 0.0;
  double back_cond2_residual = 0.0;
};

JumpReport verify_jump_propagation(const LindbladModel& model, const StabilizerCode& code,
                                   const std::string& jump, double t1_fraction,
                                   const Mat& ideal_logical);

// exp(i phi Z_L) as a logical 2x2 matrix.
Mat logical_rz(double phi);

nlohmann::json verdict_to_json(const FtVerdict& v);

}  // namespace rotft

#endif  // ROTFT_LINDBLAD_H_

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

#include "rotft/estimators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rotft/code.h"
#include "rotft/dense.h"
#include "rotft/density_sim.h"
#include "rotft/frame.h"

namespace rotft {

RotationStateResult rotation_state_4112(GateKind kind, double phi, double p, double gamma_per_p) {
  RotationStateResult res;
  res.phi = phi;
  res.p = p;
  ExtractedGateChannel ch;
  if (kind == GateKind::kNaive) {
    ch = naive_circuit_channel(phi, p);
  } else {
    ch = gate_channel(kind, phi, p, gamma_per_p);
  }
  res.gate_postselect = ch.postselect_prob;

  NoisyCircuit c(6);
  NoisyBuilder b(c, p);
  append_prep_4112(b, {0, 1, 2, 3});
  c.kraus({0, 2}, kraus_from_superop(ch.process, 4));
  b.touch({0, 2});
  b.tick();
  append_qed_zx_4112(b, {0, 1, 2, 3}, {4, 5});

  DensitySimulator ds(c);
  ds.run();
  res.pass_prob = ds.pass_probability();
  if (res.pass_prob <= 0) throw std::runtime_error("rotation_state_4112: nothing passes");
  Mat rho = reduce_to_qubits(ds.passing_state(), 6, {0, 1, 2, 3});
  auto code = four_one_one_two();
  Mat p0 = code_projector(code);
  rho = p0 * rho * p0;
  rho /= rho.trace().real();
  Mat logical = subsystem_logical_state(rho, code);

  Vec plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  Vec ideal = logical_rz(phi) * plus;
  res.d_tr = 0.5 * trace_norm(logical - ket_bra(ideal, ideal));
  return res;
}

LogicalChannelEstimate estimate_logical_channel(const ExpansionCircuit& e, std::uint64_t shots,
                                                std::uint64_t seed) {
  if (e.circuit.observables().size() < 3)
    throw std::invalid_argument("estimate_logical_channel: needs three observables");
  auto st = run_monte_carlo(e.circuit, shots, seed);
  LogicalChannelEstimate r;
  r.shots = st.shots;
  r.passed = st.passed;
  r.pass_prob = st.pass_rate();
  for (int o = 0; o < 3; ++o) {
    r.flips[o] = st.obs_rate(o);
    r.flips_se[o] = st.obs_se(o);
  }
  // X flips {A, B}, Z flips {B, AB}, Y flips {A, AB}
  r.px = 0.5 * (r.flips[0] + r.flips[1] - r.flips[2]);
  r.pz = 0.5 * (r.flips[1] + r.flips[2] - r.flips[0]);
  r.py = 0.5 * (r.flips[0] + r.flips[2] - r.flips[1]);
  r.r = 0.5 * (r.flips[0] + r.flips[1] + r.flips[2]);
  // Each failing shot flips exactly two observables, so r is a binomial
  // proportion of shots with any flip.
  double n = double(st.passed);
  r.r_se = n > 0 ? std::sqrt(std::max(r.r, 1.0 / n) * (1 - r.r) / n) : 0.0;
  r.avg_infidelity = 2.0 * r.r / 3.0;
  r.avg_infidelity_se = 2.0 * r.r_se / 3.0;
  r.diamond = 1.5 * r.avg_infidelity;
  return r;
}

ExpansionSpec expansion_spec(const ExpansionConfig& cfg) {
  ExpansionSpec s;
  s.d = cfg.d;
  s.rounds = cfg.rounds;
  s.p = cfg.p;
  s.with_gate = true;
  s.idle_noise = cfg.idle_noise;
  if (cfg.p > 0) {
    if (cfg.gate == GateKind::kNaive)
      s.gate_noise = naive_circuit_channel(std::numbers::pi / 4, cfg.p).pauli_twirled;
    else
      s.gate_noise = gate_channel(cfg.gate, std::numbers::pi / 4, cfg.p, cfg.gamma_per_p).pauli_twirled;
  }
  return s;
}

nlohmann::json logical_to_json(const LogicalChannelEstimate& e) {
  return {{"shots", e.shots},
          {"passed", e.passed},
          {"pass_prob", e.pass_prob},
          {"flips", {e.flips[0], e.flips[1], e.flips[2]}},
          {"px", e.px},
          {"py", e.py},
          {"pz", e.pz},
          {"r", e.r},
          {"r_se", e.r_se},
          {"avg_infidelity", e.avg_infidelity},
          {"avg_infidelity_se", e.avg_infidelity_se},
          {"diamond", e.diamond}};
}

}  // namespace rotft

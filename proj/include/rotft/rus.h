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

#ifndef ROTFT_RUS_H_
#define ROTFT_RUS_H_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rotft {

// Mixture of single-qubit Z rotations exp(i a Z).
struct RotationChannel {
  struct Component {
    double prob = 0.0;
    double angle = 0.0;
  };
  std::vector<Component> components;

  static RotationChannel rotation(double angle) { return {{{1.0, angle}}}; }
  double total_prob() const;
  // Applies `this` after `first`.
  RotationChannel after(const RotationChannel& first) const;
  // X-Y block of the Pauli transfer matrix: [[c, -s], [s, c]].
  double ptm_c() const;
  double ptm_s() const;
  // Decomposition R_beta o dephasing(q) with q the Z probability.
  double coherent_angle() const;
  double dephasing_prob() const;
  bool is_dephasing(double tol = 1e-15) const;
  // Error relative to the rotation `ideal`: this o R_{-ideal}.
  RotationChannel error_relative_to(double ideal) const;
  void validate(double tol = 1e-12) const;
};

// (x + pi/8) mod pi/4 - pi/8, in [-pi/8, pi/8).
double wrap_analysis(double x);
// T-gate wrap used by the cost model: [-pi/16, pi/16).
double wrap_cost(double x);

struct NoisyRotation {
  RotationChannel channel;  // {(1 - P_L, phi), (P_L, phi1)}
  double theta = 0.0;
  double phi1 = 0.0;
  double p_l = 0.0;
  double delta = 0.0;       // phi1 - phi
  double diamond = 0.0;     // P_L |sin delta| sqrt(1 + sin^2 delta)
};
// Channel of one successful injection of a projection-prepared state with
// target |phi| in (0, pi/4]; negative phi mirrors the angles.
NoisyRotation noisy_rotation(double phi, std::size_t k, double p_ud2);

struct Compensated {
  RotationChannel channel;     // E^c = C o E
  double z_prob = 0.0;         // exact dephasing probability
  double coherent_angle = 0.0;
  double diamond = 0.0;        // = z_prob for a dephasing channel
};
// Appends C = (1 - P_L) I + P_L R_{-delta} to the error part of `nr`.
Compensated compensate(const NoisyRotation& nr);
// Exact Z probability of the compensated error at wrapped angle psi; 0 at psi = 0.
double compensated_error(double psi, std::size_t k, double p_ud2);

struct RusOptions {
  std::size_t k = 6;
  double ck = 14.7;
  double p = 1e-3;
  std::size_t k_max = 48;
  double tail_tol = 1e-6;
};

struct RusBudget {
  double phi = 0.0;
  double p_tilde = 0.0;  // averaged dephasing rate
  double alpha = 0.0;    // p_tilde / (|phi| p^2)
  std::size_t k_max = 0;
  double tail_bound = 0.0;
  double expected_trials = 2.0;
};
// Sum over K of 2^-K sum_{M<=K} eps(wrap(2^(M-1) phi)); K_max doubles until
// the tail bound is below tail_tol relative, failing past 64.
RusBudget rus_average(double phi, const RusOptions& opt = {});
// Expected number of RUS trials truncated at k_max: sum K 2^-K.
double expected_trials(std::size_t k_max);

struct PecBudget {
  double p_tot = 0.0;
  double gamma_tot = 1.0;       // prod 1 / (1 - 2 P_i)
  double sampling_cost = 1.0;   // gamma_tot^2
  double phi_tot = 0.0;         // sum |phi_i|
  double phi_tot_cap = 0.0;     // 1 / (alpha p^2)
  double exp_approx = 1.0;      // exp(4 P_tot)
  bool within_cap = true;
};
PecBudget pec_budget(const std::vector<double>& angles, double p, double alpha);
// Same, for n gates of equal |phi| without materializing the list.
PecBudget pec_budget_uniform(double phi, double n_gates, double p, double alpha);

// Quasi-probability weights of one mitigated gate: apply Z with
// probability p_z and multiply the outcome by sign * gamma.
struct PecWeights {
  double gamma = 1.0;
  double p_z = 0.0;
};
PecWeights pec_weights(double p_tilde);

enum class ControlMode { kRandom, kFixedRandomized };
struct ControlResult {
  double phi_eff = 0.0;
  double relative_error = 0.0;
  bool dominated = true;  // sum of squares <= 0.1 p^2
};
ControlResult control_error(ControlMode mode, double phi, const std::vector<double>& deviations,
                            double p);
// Logical angle produced by per-group angles (atan of the product of tangents).
double multi_rotation_angle(const std::vector<double>& thetas);

nlohmann::json budget_to_json(const RusBudget& b);
nlohmann::json pec_to_json(const PecBudget& b);

}  // namespace rotft

#endif  // ROTFT_RUS_H_

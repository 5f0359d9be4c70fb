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

#ifndef ROTFT_PROJECTION_H_
#define ROTFT_PROJECTION_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotft/builders.h"
#include "rotft/channel.h"
#include "rotft/lindblad.h"
#include "rotft/rng.h"

namespace rotft {

// Logical angle reached after post-selection when every group is rotated by
// theta: asin(sin^k / sqrt(cos^2k + sin^2k)).
double projected_angle(double theta, std::size_t k);
// Inverse of projected_angle on theta in (0, pi/4]; phi in (0, pi/4].
double solve_theta(double phi, std::size_t k);

// cos^2k + sin^2k.
double pass_prob_ideal(double theta, std::size_t k);

struct ErroneousAngle {
  double phi1 = 0.0;
  double pass_prob = 0.0;  // P_pass|ud(2)
};
// Angle left after an undetectable weight-2 error on one group (k >= 2).
ErroneousAngle erroneous_angle(double theta, std::size_t k);

// |u_w|^2 = sin^2w cos^2(k-w).
double weight_amplitude_sq(double theta, std::size_t k, std::size_t w);
// Probability that the sampled b-string falls in the complement class whose
// lighter member has weight w (w <= k/2).
double class_probability(double theta, std::size_t k, std::size_t w);

// Bits drawn i.i.d. with Pr(1) = sin^2 theta, so Pr(b) = |u_|b||^2; the
// returned representative of {b, ~b} is the lexicographically smaller one,
// i.e. the one with b[0] = 0.
std::vector<std::uint8_t> sample_b_string(double theta, std::size_t k, Rng& rng);

struct ProjectionConfig {
  std::size_t m = 2;
  std::size_t k = 3;
  double phi = 1e-3;
  double p = 1e-3;
  GateKind gate = GateKind::kDirect;
  double gamma_per_p = 2e7;
  std::size_t qed_rounds = 3;
  std::size_t region_bands = 3;
  bool close_region = true;
  bool idle_noise = true;
  bool hadamard_basis = true;

  std::size_t distance() const { return m * k; }
  void validate() const;  // throws std::invalid_argument
};

// Twirled channel of one physical R_ZZ(theta) gate at rate p.
PauliChannel projection_gate_channel(const ProjectionConfig& cfg, double theta);
ProjectionSpec projection_spec(const ProjectionConfig& cfg, double theta);

struct Proportion {
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
  double value() const { return n ? double(hits) / double(n) : 0.0; }
  double se() const;  // binomial; uses 1/(n+1) when hits = 0
};

struct BayesEstimate {
  double theta = 0.0;
  double phi = 0.0;
  double phi1 = 0.0;
  double delta_phi = 0.0;
  double p = 0.0;
  Proportion pass_wt0;  // Pr(pass | b in the weight-0 class)
  Proportion pass_wt1;  // Pr(pass | one random group flipped)
  double pr_wt0 = 0.0;
  double pr_wt1 = 0.0;
  double pr_other = 0.0;  // heavier classes, not simulated
  double p_pass = 0.0, p_pass_se = 0.0;
  double p_id_pass = 0.0;
  double p_ud2_pass = 0.0, p_ud2_pass_se = 0.0;
  double p_ud2 = 0.0, p_ud2_se = 0.0;  // sum_i Pr(Z_(m) on group i, rest clean)
  double d_tr = 0.0, d_tr_se = 0.0;
  double ck = 0.0, ck_se = 0.0;  // P_ud(2) / p^2
  bool usable = false;           // some wt-1 shots passed
};

// Stratified estimator: the weight-0 and weight-1 b-classes are simulated
// separately (shots each) and recombined with their exact class
// probabilities. The noise sample is independent of b, so this has the
// same expectation as sampling b per shot.
BayesEstimate run_projection(const ProjectionConfig& cfg, std::uint64_t shots_wt0,
                             std::uint64_t shots_wt1, std::uint64_t seed);
// Single-stream variant: b sampled per shot; counts by class.
BayesEstimate run_projection_sampled(const ProjectionConfig& cfg, std::uint64_t shots,
                                     std::uint64_t seed);

struct CkPoint {
  std::size_t k = 0;
  double p = 0.0;
  BayesEstimate est;
};
struct CkFit {
  std::size_t k = 0;
  double ck = 0.0;     // inverse-variance weighted mean of P_ud(2) / p^2
  double ck_se = 0.0;
  double slope = 0.0;  // free log-log slope of P_ud(2) in p
};
std::vector<CkFit> scan_ck(const std::vector<std::size_t>& ks, const std::vector<double>& ps,
                           const ProjectionConfig& base, std::uint64_t shots_wt1,
                           std::uint64_t seed, std::vector<CkPoint>* points = nullptr);

// Least-squares slope and intercept of log y against log x.
struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LogFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::json estimate_to_json(const BayesEstimate& e);

// D_tr(|r_a>, |r_b>) for pure rotation states.
inline double rotation_state_distance(double a, double b) {
  double s = std::sin(a - b);
  return s < 0 ? -s : s;
}

}  // namespace rotft

#endif  // ROTFT_PROJECTION_H_

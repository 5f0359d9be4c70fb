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

#ifndef ROTFT_RESOURCES_H_
#define ROTFT_RESOURCES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotft/pauli.h"

namespace rotft {

struct ResourceConstants {
  double eps_c = 1e-11;          // rotation compile accuracy
  double distillation = 1.84e6;  // qubitcycles per T state
  double cultivation = 6e4;
  double cultivation_error = 2e-9;  // per injected T
  std::size_t d = 18;
  std::size_t qed_rounds = 4;
  double wrap_threshold = 0.2;  // rad; beyond this a T gate wraps the angle
  double accuracy = 1e-3;       // Trotter target, fixed by the nu fit
};

// 1.149 log2(1/eps) + 9.2
double t_per_rotation(double eps_c);

struct TrotterCounts {
  std::uint64_t nu = 0;     // segments
  double n_rot = 0.0;       // 22 N nu
  double c_t = 0.0;
  double n_t = 0.0;         // n_rot c_t
};
TrotterCounts trotter_counts(std::size_t n_sites, double time, const ResourceConstants& rc = {});

// Renewal equation Q = p d^3 + (1 - p)(d^2 r + Q), r = QED rounds.
double projection_cost(double p_suc, std::size_t d = 18, std::size_t qed_rounds = 4);

// p_suc(|phi|) by log-log interpolation between anchors, clamped outside.
class SuccessCurve {
 public:
  explicit SuccessCurve(std::vector<std::pair<double, double>> anchors);
  // (1e-4, 7.24%), (1e-3, 5.4%), (2e-1, 0.612%) for the (18,3,6) scheme at p = 1e-3.
  static SuccessCurve reference_anchors();
  double operator()(double phi) const;
  const std::vector<std::pair<double, double>>& anchors() const { return anchors_; }
  // Multiplies every anchor probability by f (for monotonicity checks).
  SuccessCurve scaled(double f) const;

 private:
  std::vector<std::pair<double, double>> anchors_;
};

struct RusCost {
  double q_tot = 0.0;
  double expected_wraps = 0.0;  // expected number of T-gate wraps
  std::size_t k_max = 0;
};
// Q_tot = sum_K 2^-K Q_K, Q_1 = Q(phi), Q_{K+1} = Q_K + Q(wrap(2^(K-1) phi)),
// with the cultivation cost added whenever the wrap fires.
RusCost rus_cost(double phi, const SuccessCurve& curve, const ResourceConstants& rc = {},
                 std::size_t k_max = 64);

struct HamiltonianTerm {
  double coeff = 0.0;
  PauliOperator op;
};
struct HamiltonianModel {
  std::size_t n_sites = 0;
  double h = 0.0;
  std::vector<double> fields;  // h_j
  std::vector<HamiltonianTerm> terms;
  std::vector<std::size_t> even, odd;  // term indices of the two layers A, B
  double one_norm() const;
  // (3 + h/2) N
  double closed_form_norm() const { return (3.0 + h / 2.0) * double(n_sites); }
};
// Periodic Heisenberg ring sum_j (XX + YY + ZZ)_{j,j+1} + h_j Z_j. Without
// explicit fields every |h_j| equals the average h/2, alternating in sign.
HamiltonianModel heisenberg(std::size_t n_sites, double h,
                            std::optional<std::vector<double>> fields = std::nullopt);

// 1 / (alpha lambda p^2), lambda = (3 + h/2) N.
double simulation_time_budget(std::size_t n_sites, double h, double p, double alpha);

struct ResourceReport {
  std::size_t n_sites = 0;
  double time = 0.0;
  double p = 0.0;
  double phi = 0.0;
  TrotterCounts counts;
  double q_tot = 0.0;
  double distillation_total = 0.0;
  double cultivation_total = 0.0;
  double projection_total = 0.0;
  double ratio_distillation = 0.0;  // distillation / projection
  double ratio_cultivation = 0.0;
  double per_rotation_distillation = 0.0;  // c_T distillation / Q_tot
  double per_rotation_cultivation = 0.0;
  double cultivation_t_limit = 0.0;
  bool cultivation_valid = true;
  double t_max = 0.0;
};
struct CompareOptions {
  ResourceConstants rc;
  std::optional<double> q_tot;  // overrides the curve
  double h = 1.0;
  double alpha = 91.0;
};
ResourceReport compare_methods(std::size_t n_sites, double time, double p, double phi,
                               const SuccessCurve& curve, const CompareOptions& opt = {});

nlohmann::json report_to_json(const ResourceReport& r);
std::string report_table(const ResourceReport& r);

}  // namespace rotft

#endif  // ROTFT_RESOURCES_H_

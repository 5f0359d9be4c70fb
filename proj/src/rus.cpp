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

#include "rotft/rus.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rotft/channel.h"
#include "rotft/projection.h"

namespace rotft {

namespace {
constexpr double kPi = std::numbers::pi;

double positive_mod(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0) r += m;
  if (r >= m) r = 0;  // fmod rounding at -0
  return r;
}
}  // namespace

double RotationChannel::total_prob() const {
  double t = 0;
  for (const auto& c : components) t += c.prob;
  return t;
}

RotationChannel RotationChannel::after(const RotationChannel& first) const {
  RotationChannel out;
  for (const auto& a : first.components)
    for (const auto& b : components) out.components.push_back({a.prob * b.prob, a.angle + b.angle});
  return out;
}

double RotationChannel::ptm_c() const {
  double c = 0;
  for (const auto& x : components) c += x.prob * std::cos(2 * x.angle);
  return c;
}

double RotationChannel::ptm_s() const {
  double s = 0;
  for (const auto& x : components) s += x.prob * std::sin(2 * x.angle);
  return s;
}

double RotationChannel::coherent_angle() const { return 0.5 * std::atan2(ptm_s(), ptm_c()); }

double RotationChannel::dephasing_prob() const {
  return 0.5 * (1 - std::hypot(ptm_c(), ptm_s()));
}

bool RotationChannel::is_dephasing(double tol) const { return std::abs(ptm_s()) <= tol; }

RotationChannel RotationChannel::error_relative_to(double ideal) const {
  return after(rotation(-ideal));
}

void RotationChannel::validate(double tol) const {
  for (const auto& c : components)
    if (c.prob < -tol) throw std::invalid_argument("RotationChannel: negative weight");
  if (std::abs(total_prob() - 1) > tol)
    throw std::invalid_argument("RotationChannel: weights do not sum to 1");
}

double wrap_analysis(double x) { return positive_mod(x + kPi / 8, kPi / 4) - kPi / 8; }

double wrap_cost(double x) { return positive_mod(x + kPi / 16, kPi / 8) - kPi / 16; }

NoisyRotation noisy_rotation(double phi, std::size_t k, double p_ud2) {
  if (!(p_ud2 >= 0 && p_ud2 < 1)) throw std::invalid_argument("noisy_rotation: P_ud2 in [0,1)");
  double a = std::abs(phi);
  double sign = phi < 0 ? -1.0 : 1.0;
  NoisyRotation r;
  r.theta = solve_theta(a, k);
  auto ea = erroneous_angle(r.theta, k);
  double pass = (1 - p_ud2) * pass_prob_ideal(r.theta, k) + p_ud2 * ea.pass_prob;
  r.p_l = p_ud2 * ea.pass_prob / pass;
  r.phi1 = sign * ea.phi1;
  r.delta = r.phi1 - phi;
  r.channel.components = {{1 - r.p_l, phi}, {r.p_l, r.phi1}};
  r.diamond = diamond_distance_rotation(r.p_l, r.delta).diamond;
  return r;
}

Compensated compensate(const NoisyRotation& nr) {
  RotationChannel err{{{1 - nr.p_l, 0.0}, {nr.p_l, nr.delta}}};
  RotationChannel comp{{{1 - nr.p_l, 0.0}, {nr.p_l, -nr.delta}}};
  Compensated c;
  c.channel = comp.after(err);
  c.z_prob = c.channel.dephasing_prob();
  c.coherent_angle = c.channel.coherent_angle();
  c.diamond = c.z_prob;
  return c;
}

double compensated_error(double psi, std::size_t k, double p_ud2) {
  if (psi == 0 || p_ud2 == 0) return 0.0;
  auto nr = noisy_rotation(psi, k, p_ud2);
  // 2 P_L (1 - P_L) sin^2 delta, closed form of compensate().z_prob
  double s = std::sin(nr.delta);
  return 2 * nr.p_l * (1 - nr.p_l) * s * s;
}

double expected_trials(std::size_t k_max) {
  double e = 0;
  for (std::size_t K = 1; K <= k_max; ++K) e += double(K) * std::ldexp(1.0, -int(K));
  return e;
}

RusBudget rus_average(double phi, const RusOptions& opt) {
  if (phi == 0) throw std::invalid_argument("rus_average: phi = 0");
  double p_ud2 = opt.ck * opt.p * opt.p;
  RusBudget b;
  b.phi = phi;
  std::size_t k_max = opt.k_max;
  while (true) {
    // eps_M for M = 1..k_max; prefix sums give the inner sums
    double total = 0, prefix = 0, eps_max = 0;
    for (std::size_t M = 1; M <= k_max; ++M) {
      double psi = wrap_analysis(std::ldexp(phi, int(M) - 1));
      double e = compensated_error(psi, opt.k, p_ud2);
      eps_max = std::max(eps_max, e);
      prefix += e;
      total += std::ldexp(prefix, -int(M));
    }
    // K > k_max: inner sum <= prefix + (K - k_max) eps_max
    double tail = std::ldexp(prefix + 2 * eps_max, -int(k_max));
    b.p_tilde = total;
    b.tail_bound = tail;
    b.k_max = k_max;
    if (tail <= opt.tail_tol * std::max(total, 1e-300)) break;
    if (k_max >= 64) throw std::runtime_error("rus_average: tail did not converge");
    k_max = std::min<std::size_t>(64, 2 * k_max);
  }
  b.alpha = b.p_tilde / (std::abs(phi) * opt.p * opt.p);
  b.expected_trials = expected_trials(b.k_max);
  return b;
}

namespace {
PecBudget finish_pec(double p_tot, double log_gamma, double phi_tot, double p, double alpha) {
  PecBudget b;
  b.p_tot = p_tot;
  b.gamma_tot = std::exp(log_gamma);
  b.sampling_cost = std::exp(2 * log_gamma);
  b.phi_tot = phi_tot;
  b.phi_tot_cap = 1.0 / (alpha * p * p);
  b.exp_approx = std::exp(4 * p_tot);
  b.within_cap = p_tot <= 1.0;
  return b;
}
}  // namespace

PecBudget pec_budget(const std::vector<double>& angles, double p, double alpha) {
  double phi_tot = 0, log_gamma = 0;
  for (double a : angles) {
    double pi = alpha * std::abs(a) * p * p;
    if (pi >= 0.5) throw std::invalid_argument("pec_budget: per-gate rate >= 1/2");
    phi_tot += std::abs(a);
    log_gamma -= std::log1p(-2 * pi);
  }
  return finish_pec(alpha * phi_tot * p * p, log_gamma, phi_tot, p, alpha);
}

PecBudget pec_budget_uniform(double phi, double n_gates, double p, double alpha) {
  double pi = alpha * std::abs(phi) * p * p;
  if (pi >= 0.5) throw std::invalid_argument("pec_budget: per-gate rate >= 1/2");
  double phi_tot = n_gates * std::abs(phi);
  return finish_pec(alpha * phi_tot * p * p, -n_gates * std::log1p(-2 * pi), phi_tot, p, alpha);
}

PecWeights pec_weights(double p_tilde) {
  if (!(p_tilde >= 0 && p_tilde < 0.5)) throw std::invalid_argument("pec_weights: rate in [0,1/2)");
  PecWeights w;
  w.gamma = 1.0 / (1 - 2 * p_tilde);
  w.p_z = p_tilde;  // |c_Z| / gamma with c_Z = -p / (1 - 2p)
  return w;
}

double multi_rotation_angle(const std::vector<double>& thetas) {
  double t = 1;
  for (double x : thetas) t *= std::tan(x);
  return std::atan(t);
}

ControlResult control_error(ControlMode mode, double phi, const std::vector<double>& deviations,
                            double p) {
  double s2 = 0;
  for (double d : deviations) s2 += d * d;
  ControlResult r;
  // random mode: deviations are the bounds on |phi_i|
  (void)mode;
  r.relative_error = s2 / 2;
  r.phi_eff = phi * (1 + r.relative_error);
  r.dominated = s2 <= 0.1 * p * p;
  return r;
}

nlohmann::json budget_to_json(const RusBudget& b) {
  return {{"phi", b.phi},         {"p_tilde", b.p_tilde},     {"alpha", b.alpha},
          {"k_max", b.k_max},     {"tail_bound", b.tail_bound},
          {"expected_trials", b.expected_trials}};
}

nlohmann::json pec_to_json(const PecBudget& b) {
  return {{"p_tot", b.p_tot},         {"gamma_tot", b.gamma_tot},
          {"sampling_cost", b.sampling_cost}, {"phi_tot", b.phi_tot},
          {"phi_tot_cap", b.phi_tot_cap},     {"exp_approx", b.exp_approx},
          {"within_cap", b.within_cap}};
}

}  // namespace rotft

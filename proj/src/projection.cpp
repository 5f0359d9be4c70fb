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

#include "rotft/projection.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rotft/frame.h"

namespace rotft {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;

double binom(std::size_t n, std::size_t r) {
  double v = 1;
  for (std::size_t i = 1; i <= r; ++i) v = v * double(n - r + i) / double(i);
  return v;
}

}  // namespace

double projected_angle(double theta, std::size_t k) {
  double s = std::pow(std::sin(theta), double(k)), c = std::pow(std::cos(theta), double(k));
  return std::asin(s / std::sqrt(c * c + s * s));
}

double solve_theta(double phi, std::size_t k) {
  if (k < 1) throw std::invalid_argument("solve_theta: k >= 1");
  if (!(phi > 0) || phi > kQuarterPi)
    throw std::invalid_argument("solve_theta: phi outside (0, pi/4]");
  if (k == 1) return phi;
  // Work with t = tan^k(theta) = tan(phi) to keep precision for tiny phi.
  double lo = 0, hi = kQuarterPi;
  double guess = std::atan(std::pow(std::tan(phi), 1.0 / double(k)));
  for (int it = 0; it < 200; ++it) {
    double mid = it == 0 ? guess : 0.5 * (lo + hi);
    double r = projected_angle(mid, k) - phi;
    if (std::abs(r) < 1e-14 * std::max(1.0, phi) && it > 0) return mid;
    (r < 0 ? lo : hi) = mid;
    if (hi - lo < 1e-17) break;
  }
  return 0.5 * (lo + hi);
}

double pass_prob_ideal(double theta, std::size_t k) {
  return std::pow(std::cos(theta), 2.0 * k) + std::pow(std::sin(theta), 2.0 * k);
}

ErroneousAngle erroneous_angle(double theta, std::size_t k) {
  if (k < 2) throw std::invalid_argument("erroneous_angle: k >= 2");
  double s = std::sin(theta), c = std::cos(theta);
  ErroneousAngle e;
  e.pass_prob = s * s * c * c * (std::pow(s, 2.0 * k - 4) + std::pow(c, 2.0 * k - 4));
  e.phi1 = -std::asin(std::pow(s, double(k - 1)) * c / std::sqrt(e.pass_prob));
  return e;
}

double weight_amplitude_sq(double theta, std::size_t k, std::size_t w) {
  return std::pow(std::sin(theta), 2.0 * w) * std::pow(std::cos(theta), 2.0 * (k - w));
}

double class_probability(double theta, std::size_t k, std::size_t w) {
  if (2 * w > k) return 0.0;
  if (2 * w == k) return binom(k, w) * weight_amplitude_sq(theta, k, w);
  return binom(k, w) * (weight_amplitude_sq(theta, k, w) + weight_amplitude_sq(theta, k, k - w));
}

std::vector<std::uint8_t> sample_b_string(double theta, std::size_t k, Rng& rng) {
  std::bernoulli_distribution flip(std::pow(std::sin(theta), 2));
  std::vector<std::uint8_t> b(k);
  for (auto& x : b) x = flip(rng);
  if (!b.empty() && b[0])
    for (auto& x : b) x ^= 1;
  return b;
}

void ProjectionConfig::validate() const {
  if (m != 2 && m != 3) throw std::invalid_argument("projection: m must be 2 or 3");
  if (k < 2) throw std::invalid_argument("projection: k >= 2");
  if (!(phi > 0) || phi > kQuarterPi) throw std::invalid_argument("projection: phi in (0, pi/4]");
  if (!(p >= 0) || p > 0.1) throw std::invalid_argument("projection: p in [0, 0.1]");
  if (qed_rounds < 1) throw std::invalid_argument("projection: qed_rounds >= 1");
  if (region_bands < 1) throw std::invalid_argument("projection: region_bands >= 1");
}

PauliChannel projection_gate_channel(const ProjectionConfig& cfg, double theta) {
  if (cfg.p <= 0) return PauliChannel::identity(2);
  if (cfg.gate == GateKind::kNaive) return naive_circuit_channel(theta, cfg.p).pauli_twirled;
  return gate_channel(cfg.gate, theta, cfg.p, cfg.gamma_per_p).pauli_twirled;
}

ProjectionSpec projection_spec(const ProjectionConfig& cfg, double theta) {
  ProjectionSpec s;
  s.m = cfg.m;
  s.k = cfg.k;
  s.p = cfg.p;
  s.gate_noise = projection_gate_channel(cfg, theta);
  s.qed_rounds = cfg.qed_rounds;
  s.region_bands = cfg.region_bands;
  s.close_region = cfg.close_region;
  s.idle_noise = cfg.idle_noise;
  s.hadamard_basis = cfg.hadamard_basis;
  return s;
}

double Proportion::se() const {
  if (n == 0) return 0.0;
  double nn = double(n);
  double q = hits ? value() : 1.0 / (nn + 1);
  return std::sqrt(q * (1 - q) / nn);
}

namespace {

void fill_estimate(BayesEstimate& e, std::size_t k) {
  double q0 = e.pass_wt0.value(), q1 = e.pass_wt1.value();
  double s0 = e.pass_wt0.se(), s1 = e.pass_wt1.se();
  double a = e.pr_wt1 * q1, b = e.pr_wt0 * q0;
  e.p_pass = a + b;
  e.p_pass_se = std::hypot(e.pr_wt0 * s0, e.pr_wt1 * s1);
  e.usable = e.pass_wt1.hits > 0 && e.pass_wt0.hits > 0;
  if (e.p_pass > 0) {
    e.p_ud2_pass = a / e.p_pass;
    e.p_id_pass = b / e.p_pass;
    // d f / d q1 = pr1 b / P^2, d f / d q0 = -pr0 a / P^2
    double P2 = e.p_pass * e.p_pass;
    e.p_ud2_pass_se = std::hypot(e.pr_wt1 * b / P2 * s1, e.pr_wt0 * a / P2 * s0);
  }
  e.p_ud2 = double(k) * q1;
  e.p_ud2_se = double(k) * s1;
  double kernel = rotation_state_distance(e.phi, e.phi1);
  e.d_tr = e.p_ud2_pass * kernel;
  e.d_tr_se = e.p_ud2_pass_se * kernel;
  if (e.p > 0) {
    e.ck = e.p_ud2 / (e.p * e.p);
    e.ck_se = e.p_ud2_se / (e.p * e.p);
  }
}

BayesEstimate prior(const ProjectionConfig& cfg) {
  cfg.validate();
  BayesEstimate e;
  e.p = cfg.p;
  e.phi = cfg.phi;
  e.theta = solve_theta(cfg.phi, cfg.k);
  auto ea = erroneous_angle(e.theta, cfg.k);
  e.phi1 = ea.phi1;
  e.delta_phi = std::abs(e.phi - e.phi1);
  e.pr_wt0 = class_probability(e.theta, cfg.k, 0);
  e.pr_wt1 = class_probability(e.theta, cfg.k, 1);
  e.pr_other = std::max(0.0, 1.0 - e.pr_wt0 - e.pr_wt1);
  return e;
}

void flip_group(FrameBatch& f, const std::vector<std::size_t>& g, std::size_t shot) {
  for (auto q : g) f.apply(q, 'Z', shot);
}

}  // namespace

BayesEstimate run_projection(const ProjectionConfig& cfg, std::uint64_t shots_wt0,
                             std::uint64_t shots_wt1, std::uint64_t seed) {
  BayesEstimate e = prior(cfg);
  auto pc = build_projection_circuit(projection_spec(cfg, e.theta));
  FrameSampler fs(pc.circuit);
  if (shots_wt0) {
    auto st = fs.sample(shots_wt0, seed, {}, 0);
    e.pass_wt0 = {st.shots, st.passed};
  }
  if (shots_wt1) {
    const auto groups = pc.groups;
    HookMap hooks{{0, [groups](FrameBatch& f, Rng& rng) {
                     std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
                     for (std::size_t s = 0; s < f.shots(); ++s) flip_group(f, groups[pick(rng)], s);
                   }}};
    auto st = fs.sample(shots_wt1, seed, hooks, 1);
    e.pass_wt1 = {st.shots, st.passed};
  }
  fill_estimate(e, cfg.k);
  return e;
}

BayesEstimate run_projection_sampled(const ProjectionConfig& cfg, std::uint64_t shots,
                                     std::uint64_t seed) {
  BayesEstimate e = prior(cfg);
  auto pc = build_projection_circuit(projection_spec(cfg, e.theta));
  FrameSampler fs(pc.circuit);
  const auto groups = pc.groups;
  const double theta = e.theta;
  const std::size_t k = cfg.k;
  HookMap hooks{{0, [groups, theta, k](FrameBatch& f, Rng& rng) {
                   for (std::size_t s = 0; s < f.shots(); ++s) {
                     auto b = sample_b_string(theta, k, rng);
                     std::size_t w = 0;
                     for (std::size_t i = 0; i < k; ++i)
                       if (b[i]) {
                         flip_group(f, groups[i], s);
                         ++w;
                       }
                     f.tags[s] = static_cast<std::uint32_t>(std::min(w, k - w) + 1);
                   }
                 }}};
  auto st = fs.sample(shots, seed, hooks, 2);
  auto at = [&](const std::vector<std::uint64_t>& v, std::size_t i) {
    return i < v.size() ? v[i] : std::uint64_t{0};
  };
  e.pass_wt0 = {at(st.tag_shots, 1), at(st.tag_passed, 1)};
  e.pass_wt1 = {at(st.tag_shots, 2), at(st.tag_passed, 2)};
  // Empirical class weights replace the exact ones.
  if (st.shots) {
    e.pr_wt0 = double(e.pass_wt0.n) / double(st.shots);
    e.pr_wt1 = double(e.pass_wt1.n) / double(st.shots);
    e.pr_other = 1.0 - e.pr_wt0 - e.pr_wt1;
  }
  fill_estimate(e, cfg.k);
  return e;
}

LogFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_fit: need >= 2 points");
  double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("log_log_fit: non-positive value");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

std::vector<CkFit> scan_ck(const std::vector<std::size_t>& ks, const std::vector<double>& ps,
                           const ProjectionConfig& base, std::uint64_t shots_wt1,
                           std::uint64_t seed, std::vector<CkPoint>* points) {
  std::vector<CkFit> out;
  std::uint64_t stream = 0;
  for (auto k : ks) {
    CkFit fit;
    fit.k = k;
    std::vector<double> xs, ys;
    double wsum = 0, wc = 0;
    for (auto p : ps) {
      ProjectionConfig cfg = base;
      cfg.k = k;
      cfg.p = p;
      auto e = run_projection(cfg, std::min<std::uint64_t>(shots_wt1, 100000), shots_wt1,
                              derive_seed(seed, 7, stream++));
      if (points) points->push_back({k, p, e});
      if (e.pass_wt1.hits == 0) continue;
      xs.push_back(p);
      ys.push_back(e.p_ud2);
      double w = 1.0 / (e.ck_se * e.ck_se);
      wsum += w;
      wc += w * e.ck;
    }
    if (wsum > 0) {
      fit.ck = wc / wsum;
      fit.ck_se = 1.0 / std::sqrt(wsum);
    }
    if (xs.size() >= 2) fit.slope = log_log_fit(xs, ys).slope;
    out.push_back(fit);
  }
  return out;
}

nlohmann::json estimate_to_json(const BayesEstimate& e) {
  return {{"theta", e.theta},
          {"phi", e.phi},
          {"phi1", e.phi1},
          {"delta_phi", e.delta_phi},
          {"p", e.p},
          {"shots_wt0", e.pass_wt0.n},
          {"passed_wt0", e.pass_wt0.hits},
          {"shots_wt1", e.pass_wt1.n},
          {"passed_wt1", e.pass_wt1.hits},
          {"pr_wt0", e.pr_wt0},
          {"pr_wt1", e.pr_wt1},
          {"pr_other", e.pr_other},
          {"p_pass", e.p_pass},
          {"p_pass_se", e.p_pass_se},
          {"p_id_pass", e.p_id_pass},
          {"p_ud2_pass", e.p_ud2_pass},
          {"p_ud2_pass_se", e.p_ud2_pass_se},
          {"p_ud2", e.p_ud2},
          {"p_ud2_se", e.p_ud2_se},
          {"d_tr", e.d_tr},
          {"d_tr_se", e.d_tr_se},
          {"ck", e.ck},
          {"ck_se", e.ck_se},
          {"usable", e.usable}};
}

}  // namespace rotft

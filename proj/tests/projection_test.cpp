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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "rotft/channel.h"
#include "rotft/frame.h"
#include "rotft/projection.h"

using namespace rotft;

namespace {

using cd = std::complex<double>;

// k qubits in |+>^k rotated by exp(i theta Z) each, optionally with Z on
// qubit 0, projected on span{|+..+>, |-..->}. The X-repetition code stands
// in for the groups: a single group flip is detectable, all k are Z_L.
struct Projected {
  double pass = 0.0;
  double angle = 0.0;  // magnitude of the logical angle
};
Projected brute_force(double theta, std::size_t k, bool flip_first) {
  // Work in the X basis: exp(i t Z)|+> = cos t |+> + i sin t |->, and Z
  // swaps |+> and |->.
  std::size_t dim = std::size_t{1} << k;
  std::vector<cd> psi(dim, 1.0);
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t q = 0; q < k; ++q) psi[s] *= ((s >> q) & 1) ? cd(0, std::sin(theta)) : cd(std::cos(theta));
  if (flip_first) {
    std::vector<cd> out(dim);
    for (std::size_t s = 0; s < dim; ++s) out[s ^ 1] = psi[s];
    psi = out;
  }
  cd a = psi[0], b = psi[dim - 1];
  Projected r;
  r.pass = std::norm(a) + std::norm(b);
  r.angle = std::atan2(std::abs(b), std::abs(a));
  return r;
}

}  // namespace

TEST(ProjectionAngle, MatchesStatevectorOracle) {
  for (std::size_t k : {2u, 3u, 4u, 6u})
    for (double theta : {0.01, 0.1, 0.3, 0.7}) {
      auto bf = brute_force(theta, k, false);
      EXPECT_NEAR(pass_prob_ideal(theta, k), bf.pass, 1e-12);
      EXPECT_NEAR(projected_angle(theta, k), bf.angle, 1e-12) << k << " " << theta;
      auto err = brute_force(theta, k, true);
      auto ea = erroneous_angle(theta, k);
      EXPECT_NEAR(ea.pass_prob, err.pass, 1e-12);
      EXPECT_NEAR(std::abs(ea.phi1), err.angle, 1e-12);
    }
}

TEST(ProjectionAngle, SolveThetaInvertsAndRejectsOutOfRange) {
  for (std::size_t k : {2u, 3u, 6u})
    for (double phi : {1e-6, 1e-3, 0.05, 0.2, 0.7}) {
      double th = solve_theta(phi, k);
      EXPECT_GT(th, 0.0);
      EXPECT_LE(th, std::numbers::pi / 4 + 1e-15);
      EXPECT_NEAR(projected_angle(th, k), phi, 1e-12 * std::max(1.0, phi));
    }
  EXPECT_DOUBLE_EQ(solve_theta(0.3, 1), 0.3);
  EXPECT_THROW(solve_theta(0.0, 3), std::invalid_argument);
  EXPECT_THROW(solve_theta(1.0, 3), std::invalid_argument);
  // phi = 1e-3, k = 3 gives theta ~ phi^(1/3)
  EXPECT_NEAR(solve_theta(1e-3, 3), std::atan(std::cbrt(std::tan(1e-3))), 1e-12);
}

TEST(ProjectionClasses, ProbabilitiesSumToOne) {
  for (std::size_t k : {2u, 3u, 4u, 5u, 6u})
    for (double theta : {0.05, 0.2, 0.5}) {
      double s = 0;
      for (std::size_t w = 0; 2 * w <= k; ++w) s += class_probability(theta, k, w);
      EXPECT_NEAR(s, 1.0, 1e-12);
      EXPECT_NEAR(class_probability(theta, k, 0), pass_prob_ideal(theta, k), 1e-15);
    }
}

TEST(ProjectionClasses, SampledBStringsFollowClassWeights) {
  const std::size_t k = 4;
  const double theta = 0.4;
  Rng rng(11);
  std::map<std::size_t, int> count;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    auto b = sample_b_string(theta, k, rng);
    ASSERT_EQ(b[0], 0);
    std::size_t w = 0;
    for (auto x : b) w += x;
    count[std::min(w, k - w)]++;
  }
  for (std::size_t w = 0; w <= k / 2; ++w) {
    double p = class_probability(theta, k, w);
    double se = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(double(count[w]) / n, p, 5 * se) << w;
  }
}

TEST(RunProjection, NoiselessMatchesIdealPass) {
  ProjectionConfig cfg;
  cfg.p = 0.0;
  cfg.phi = 0.01;
  auto e = run_projection(cfg, 2048, 2048, 5);
  EXPECT_EQ(e.pass_wt0.hits, e.pass_wt0.n);
  EXPECT_EQ(e.pass_wt1.hits, 0u);
  EXPECT_NEAR(e.p_pass, pass_prob_ideal(e.theta, cfg.k), 1e-12);
  EXPECT_EQ(e.d_tr, 0.0);
  EXPECT_FALSE(e.usable);
}

TEST(RunProjection, StratifiedAgreesWithPerShotSampling) {
  ProjectionConfig cfg;
  cfg.k = 2;
  cfg.phi = 0.05;
  cfg.p = 3e-3;
  auto a = run_projection(cfg, 200000, 200000, 7);
  auto b = run_projection_sampled(cfg, 400000, 8);
  double se = std::hypot(a.p_pass_se, b.p_pass_se);
  EXPECT_NEAR(a.p_pass, b.p_pass, 5 * se);
  EXPECT_GT(a.p_pass, 0.1);
}

TEST(RunProjection, InvalidConfigRejected) {
  ProjectionConfig cfg;
  cfg.m = 4;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.m = 2;
  cfg.k = 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.k = 3;
  cfg.phi = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

// Every single circuit fault combined with a single group flip (the only
// first-order way to reach the wrong b-class) must be caught, except the ZZ
// component of the rotation channel itself, which is second order for the
// FT gates.
TEST(ProjectionFaults, SingleFaultsWithGroupFlipAreDetected) {
  for (auto [m, k] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 3}}) {
    ProjectionSpec s;
    s.m = m;
    s.k = k;
    s.p = 1e-3;
    s.gate_noise = depolarizing(2, 1e-3);
    auto pc = build_projection_circuit(s);
    const auto& c = pc.circuit;
    struct Fault {
      std::size_t op;
      std::vector<std::pair<std::size_t, char>> paulis;
    };
    std::vector<Fault> faults;
    NoisyCircuit d(c.n_qubits());
    const char letter[4] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t i = 0; i < c.ops().size(); ++i) {
      const Op& o = c.ops()[i];
      if (!is_noise(o.type)) {
        d.append(o);
        continue;
      }
      d.slot(1000 + int(i));
      if (!is_two_qubit(o.type)) {
        for (auto q : o.targets)
          for (int l = 1; l < 4; ++l) faults.push_back({i, {{q, letter[l]}}});
      } else {
        for (std::size_t j = 0; j < o.targets.size(); j += 2)
          for (int l = 1; l < 16; ++l) {
            Fault f{i, {}};
            if (l & 3) f.paulis.push_back({o.targets[j], letter[l & 3]});
            if (l >> 2) f.paulis.push_back({o.targets[j + 1], letter[l >> 2]});
            faults.push_back(f);
          }
      }
    }
    for (const auto& det : c.detectors()) d.add_detector(det.meas, det.postselect, det.tag);
    FrameSampler fs(d);
    const std::size_t G = pc.groups.size();
    HookMap hooks;
    hooks[0] = [&](FrameBatch& fb, Rng&) {
      for (std::size_t f = 0; f < faults.size(); ++f)
        for (std::size_t g = 0; g < G; ++g)
          for (auto q : pc.groups[g]) fb.apply(q, 'Z', f * G + g);
    };
    std::map<std::size_t, std::vector<std::size_t>> by_op;
    for (std::size_t f = 0; f < faults.size(); ++f) by_op[faults[f].op].push_back(f);
    for (auto& [op, list] : by_op) {
      hooks[1000 + int(op)] = [&, list](FrameBatch& fb, Rng&) {
        for (auto f : list)
          for (std::size_t g = 0; g < G; ++g)
            for (auto [q, l] : faults[f].paulis) fb.apply(q, l, f * G + g);
      };
    }
    Rng rng(1);
    auto r = fs.run_batch((faults.size() * G + 63) / 64, rng, hooks, false);
    int passing = 0;
    for (std::size_t f = 0; f < faults.size(); ++f)
      for (std::size_t g = 0; g < G; ++g) {
        if (!r.pass_bit(f * G + g)) continue;
        ++passing;
        const auto& fault = faults[f];
        bool gate_zz = c.ops()[fault.op].type == OpType::kPauliChannel2 && fault.paulis.size() == 2 &&
                       fault.paulis[0].second == 'Z' && fault.paulis[1].second == 'Z';
        EXPECT_TRUE(gate_zz) << "m=" << m << " op " << fault.op << " "
                             << op_name(c.ops()[fault.op].type);
      }
    EXPECT_GT(passing, 0) << "gate ZZ should be the undetectable weight-2 error";
  }
}

TEST(LogLogFit, RecoversPowerLaw) {
  std::vector<double> x{1e-4, 1e-3, 1e-2}, y;
  for (double v : x) y.push_back(3.0 * v * v);
  auto f = log_log_fit(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-9);
}

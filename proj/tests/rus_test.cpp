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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rotft/projection.h"
#include "rotft/rus.h"

namespace rotft {
namespace {

constexpr double kPi = std::numbers::pi;

// Action of a rotation mixture on the Bloch x-y plane: (mean cos 2a, mean sin 2a).
std::pair<double, double> xy_action(const RotationChannel& ch) {
  double c = 0, s = 0;
  for (const auto& x : ch.components) {
    c += x.prob * std::cos(2 * x.angle);
    s += x.prob * std::sin(2 * x.angle);
  }
  return {c, s};
}

TEST(Wrap, RangeAndPeriod) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20, 20);
  EXPECT_EQ(wrap_analysis(0.0), 0.0);
  EXPECT_EQ(wrap_cost(0.0), 0.0);
  for (int i = 0; i < 10000; ++i) {
    double x = u(rng);
    double w = wrap_analysis(x);
    EXPECT_GE(w, -kPi / 8);
    EXPECT_LT(w, kPi / 8);
    EXPECT_NEAR(wrap_analysis(x + kPi / 4), w, 1e-12);
    double r = std::remainder(x - w, kPi / 4);
    EXPECT_NEAR(r, 0.0, 1e-12);
    double wc = wrap_cost(x);
    EXPECT_GE(wc, -kPi / 16);
    EXPECT_LT(wc, kPi / 16);
  }
  EXPECT_NEAR(wrap_analysis(kPi / 4 + 0.01), 0.01, 1e-15);
  EXPECT_NEAR(wrap_analysis(kPi / 8), -kPi / 8, 1e-15);
}

TEST(RotationChannel, CompositionAndDecomposition) {
  auto a = RotationChannel::rotation(0.2);
  auto b = RotationChannel{{{0.7, 0.1}, {0.3, -0.4}}};
  auto c = b.after(a);
  EXPECT_NEAR(c.total_prob(), 1.0, 1e-15);
  auto [cc, cs] = xy_action(c);
  EXPECT_NEAR(c.ptm_c(), cc, 1e-15);
  EXPECT_NEAR(c.ptm_s(), cs, 1e-15);
  // R_beta o dephasing(q): (1 - 2q)(cos 2 beta, sin 2 beta)
  double q = c.dephasing_prob(), beta = c.coherent_angle();
  EXPECT_NEAR((1 - 2 * q) * std::cos(2 * beta), cc, 1e-14);
  EXPECT_NEAR((1 - 2 * q) * std::sin(2 * beta), cs, 1e-14);
  EXPECT_FALSE(c.is_dephasing());
  EXPECT_THROW((RotationChannel{{{0.5, 0.0}, {0.6, 0.1}}}.validate()), std::invalid_argument);
}

TEST(NoisyRotation, ResidualDiamondFormula) {
  for (double phi : {1e-3, 0.05, -0.2}) {
    auto nr = noisy_rotation(phi, 6, 14.7e-6);
    EXPECT_NEAR(nr.channel.total_prob(), 1.0, 1e-15);
    double s = std::sin(nr.delta);
    EXPECT_NEAR(nr.diamond, nr.p_l * std::abs(s) * std::sqrt(1 + s * s), 1e-18);
    EXPECT_GT(nr.p_l, 0.0);
    // sign mirrors
    auto mirror = noisy_rotation(-phi, 6, 14.7e-6);
    EXPECT_NEAR(mirror.phi1, -nr.phi1, 1e-15);
    EXPECT_NEAR(mirror.p_l, nr.p_l, 1e-18);
  }
  auto clean = noisy_rotation(0.1, 6, 0.0);
  EXPECT_EQ(clean.p_l, 0.0);
  EXPECT_EQ(clean.diamond, 0.0);
}

TEST(NoisyRotation, PostSelectedWeightFromBayes) {
  // P_L = P_ud2 P_pass|ud2 / P_pass
  double phi = 0.01, pud = 1e-5;
  auto nr = noisy_rotation(phi, 4, pud);
  double th = solve_theta(phi, 4);
  auto ea = erroneous_angle(th, 4);
  double pass = (1 - pud) * pass_prob_ideal(th, 4) + pud * ea.pass_prob;
  EXPECT_NEAR(nr.p_l, pud * ea.pass_prob / pass, 1e-18);
}

TEST(Compensation, ResultIsPureDephasing) {
  for (double phi : {1e-4, 3e-3, 0.1, 0.35, -0.07})
    for (double pud : {1e-6, 1e-4, 1e-2}) {
      auto nr = noisy_rotation(phi, 6, pud);
      auto c = compensate(nr);
      ASSERT_TRUE(c.channel.is_dephasing(1e-14));
      EXPECT_NEAR(c.coherent_angle, 0.0, 1e-12);
      // independent: mixture angles {0, +d, -d}
      double P = nr.p_l, d = nr.delta;
      double mean_cos = (1 - P) * (1 - P) + P * P + 2 * P * (1 - P) * std::cos(2 * d);
      double q = (1 - mean_cos) / 2;
      EXPECT_NEAR(c.z_prob, q, 1e-15);
      EXPECT_NEAR(c.z_prob, 2 * P * (1 - P) * std::sin(d) * std::sin(d), 1e-15);
      EXPECT_NEAR(compensated_error(phi, 6, pud), c.z_prob, 1e-15);
      EXPECT_LE(c.diamond, nr.diamond * 2);
    }
  EXPECT_EQ(compensated_error(0.0, 6, 1e-5), 0.0);
}

TEST(RusAverage, PeriodicInPhi) {
  RusOptions opt;
  for (double phi : {1e-3, 0.05, 0.13, -0.09}) {
    auto a = rus_average(phi, opt);
    auto b = rus_average(phi + kPi / 4, opt);
    EXPECT_NEAR(b.p_tilde, a.p_tilde, 1e-9 * a.p_tilde) << phi;
  }
}

TEST(RusAverage, ExpectedTrialsIsTwo) {
  EXPECT_NEAR(expected_trials(64), 2.0, 1e-15);
  EXPECT_NEAR(expected_trials(1), 0.5, 0.0);
  double geo = 0;
  for (int K = 1; K <= 64; ++K) geo += std::ldexp(1.0, -K);
  EXPECT_NEAR(geo, 1.0, 1e-15);
  auto b = rus_average(1e-3);
  EXPECT_NEAR(b.expected_trials, 2.0, 1e-12);
  EXPECT_LE(b.tail_bound, 1e-6 * b.p_tilde);
}

TEST(RusAverage, MatchesDirectDoubleSum) {
  RusOptions opt;
  opt.k_max = 64;
  double phi = 0.0123;
  double pud = opt.ck * opt.p * opt.p;
  double direct = 0;
  for (int K = 1; K <= 60; ++K) {
    double inner = 0;
    for (int M = 1; M <= K; ++M) inner += compensated_error(wrap_analysis(std::ldexp(phi, M - 1)), opt.k, pud);
    direct += std::ldexp(inner, -K);
  }
  EXPECT_NEAR(rus_average(phi, opt).p_tilde, direct, 1e-12 * direct);
}

TEST(RusAverage, MaxAlphaInBand) {
  RusOptions opt;  // c(6) = 14.7, p = 1e-3
  double best = 0;
  for (int i = 0; i <= 400; ++i) {
    double phi = std::pow(10.0, -5 + 4.0 * i / 400);  // 1e-5 .. 0.1
    best = std::max(best, rus_average(phi, opt).alpha);
  }
  EXPECT_GE(best, 82.0);
  EXPECT_LE(best, 100.0);
}

TEST(RusAverage, DyadicAngleTruncates) {
  // pi/16: doubling lands on multiples of pi/8 -> wrap to -pi/8, then 0
  RusOptions opt;
  auto b = rus_average(kPi / 16, opt);
  double pud = opt.ck * opt.p * opt.p;
  double e1 = compensated_error(kPi / 16, opt.k, pud);
  double e2 = compensated_error(wrap_analysis(kPi / 8), opt.k, pud);
  // eps_M = 0 for M >= 3: sum = e1 * 1 + e2 * (1/2)
  EXPECT_NEAR(b.p_tilde, e1 + e2 / 2, 1e-12 * b.p_tilde);
}

TEST(Pec, BudgetNumbers) {
  auto cap = pec_budget_uniform(1e-3, 1, 1e-3, 91);
  EXPECT_NEAR(cap.phi_tot_cap, 1.10e4, 0.005e4);
  double gates = cap.phi_tot_cap / 1e-3;
  EXPECT_NEAR(gates, 1.10e7, 0.005e7);
  auto full = pec_budget_uniform(1e-3, gates, 1e-3, 91);
  EXPECT_NEAR(full.p_tot, 1.0, 1e-12);
  EXPECT_TRUE(full.within_cap);
  EXPECT_NEAR(full.sampling_cost / std::exp(4.0), 1.0, 0.02);
  EXPECT_NEAR(full.exp_approx, std::exp(4.0), 1e-9);
  auto over = pec_budget_uniform(1e-3, 2 * gates, 1e-3, 91);
  EXPECT_FALSE(over.within_cap);
}

TEST(Pec, ListMatchesUniform) {
  std::vector<double> angles(1000, -2e-3);
  auto a = pec_budget(angles, 1e-3, 91);
  auto b = pec_budget_uniform(2e-3, 1000, 1e-3, 91);
  EXPECT_NEAR(a.p_tot, b.p_tot, 1e-15);
  EXPECT_NEAR(a.gamma_tot, b.gamma_tot, 1e-12);
  EXPECT_NEAR(a.phi_tot, 2.0, 1e-12);
}

TEST(Pec, WeightsInvertDephasing) {
  // (1 - q) rho + q Z rho Z undone by gamma [(1 - p_z) rho - p_z Z rho Z]
  double q = 3e-3;
  auto w = pec_weights(q);
  double f = 1 - 2 * q;  // off-diagonal scale of the noise
  // Z rho Z flips the off-diagonal sign, so the inverse scales it by gamma
  EXPECT_NEAR(w.gamma * ((1 - w.p_z) + w.p_z) * f, 1.0, 1e-14);
  EXPECT_NEAR(w.gamma * ((1 - w.p_z) - w.p_z), 1.0, 1e-14);  // trace preserved
  EXPECT_THROW(pec_weights(0.6), std::invalid_argument);
}

TEST(ControlError, FormulaValues) {
  auto zero = control_error(ControlMode::kFixedRandomized, 0.01, std::vector<double>(6, 0.0), 1e-3);
  EXPECT_EQ(zero.phi_eff, 0.01);
  auto r = control_error(ControlMode::kFixedRandomized, 0.01, std::vector<double>(6, 1e-3), 1e-3);
  EXPECT_NEAR(r.relative_error, 3e-6, 1e-18);
  EXPECT_FALSE(r.dominated);
  auto small = control_error(ControlMode::kRandom, 0.01, std::vector<double>(6, 1e-5), 1e-3);
  EXPECT_TRUE(small.dominated);
}

TEST(ControlError, SignRandomizationCancelsFirstOrder) {
  const std::size_t k = 6;
  const double phi = 1e-3;
  const double theta = solve_theta(phi, k);
  std::vector<double> dev{1e-4, -0.7e-4, 0.5e-4, 1e-4, 0.3e-4, 0.8e-4};
  auto signed_angle = [&](unsigned mask) {
    std::vector<double> th(k);
    double parity = 1;
    for (std::size_t i = 0; i < k; ++i) {
      double s = (mask >> i) & 1 ? -1.0 : 1.0;
      th[i] = s * theta + dev[i];
      parity *= s;
    }
    return parity * multi_rotation_angle(th);  // relabel so the target is +phi
  };
  double naive_bias = signed_angle(0) - phi;
  ASSERT_GT(std::abs(naive_bias), 1e-6);
  // exact average over the 2^k sign choices
  double mean = 0;
  for (unsigned m = 0; m < (1u << k); ++m) mean += signed_angle(m);
  mean /= double(1u << k);
  EXPECT_LT(std::abs(mean - phi), 1e-3 * std::abs(naive_bias));
  // Monte Carlo over 1e5 draws agrees with the exact average
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<unsigned> u(0, (1u << k) - 1);
  double s = 0, s2 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double v = signed_angle(u(rng));
    s += v;
    s2 += v * v;
  }
  double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
  EXPECT_NEAR(m, mean, 5 * se);
}

TEST(Json, BudgetFields) {
  auto j = budget_to_json(rus_average(1e-3));
  EXPECT_TRUE(j.contains("alpha"));
  EXPECT_TRUE(pec_to_json(pec_budget_uniform(1e-3, 10, 1e-3, 91)).contains("gamma_tot"));
}

}  // namespace
}  // namespace rotft

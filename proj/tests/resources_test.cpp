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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rotft/resources.h"

namespace rotft {
namespace {

TEST(TCount, PerRotation) {
  EXPECT_NEAR(t_per_rotation(1e-11), 1.149 * 11 * std::log2(10.0) + 9.2, 1e-12);
  EXPECT_NEAR(t_per_rotation(1e-11), 51.186, 1e-3);
  EXPECT_THROW(t_per_rotation(0.0), std::invalid_argument);
}

TEST(Trotter, CountsExample) {
  auto t = trotter_counts(50, 50);
  double nu = std::exp(1.85) * std::pow(50.0, 0.27) * std::pow(50.0, 1.25);
  EXPECT_EQ(t.nu, std::uint64_t(std::ceil(nu)));
  EXPECT_GE(double(t.nu), nu);
  EXPECT_LT(double(t.nu), nu + 1);
  EXPECT_EQ(t.n_rot, 22.0 * 50 * double(t.nu));
  EXPECT_NEAR(t.n_t, t.n_rot * t_per_rotation(1e-11), 1e-6);
  EXPECT_LT(t.n_t, 5e8);
}

TEST(Trotter, ZeroTime) {
  auto t = trotter_counts(100, 0);
  EXPECT_EQ(t.nu, 0u);
  EXPECT_EQ(t.n_rot, 0.0);
  EXPECT_EQ(t.n_t, 0.0);
  EXPECT_THROW(trotter_counts(10, -1), std::invalid_argument);
}

TEST(ProjectionCost, RenewalEquation) {
  EXPECT_DOUBLE_EQ(projection_cost(0.054), 28536.0);
  EXPECT_DOUBLE_EQ(projection_cost(1.0), 5832.0);
  // Q = p d^3 + (1 - p)(d^2 r + Q)
  for (double p : {0.01, 0.1, 0.5}) {
    double q = projection_cost(p, 12, 3);
    EXPECT_NEAR(q, p * 1728 + (1 - p) * (144 * 3 + q), 1e-9 * q);
  }
  EXPECT_THROW(projection_cost(0.0), std::invalid_argument);
}

TEST(SuccessCurve, InterpolatesAndClamps) {
  auto c = SuccessCurve::reference_anchors();
  EXPECT_DOUBLE_EQ(c(1e-3), 0.054);
  EXPECT_DOUBLE_EQ(c(-1e-3), 0.054);
  EXPECT_DOUBLE_EQ(c(1e-6), 0.0724);
  EXPECT_DOUBLE_EQ(c(1.0), 0.00612);
  double mid = c(std::sqrt(1e-4 * 1e-3));
  EXPECT_NEAR(mid, std::sqrt(0.0724 * 0.054), 1e-12);
  for (double x = 1e-5; x < 0.5; x *= 1.3) EXPECT_GE(c(x), c(x * 1.3) - 1e-15);
}

TEST(RusCost, QtotWithinBand) {
  auto rc = rus_cost(1e-3, SuccessCurve::reference_anchors());
  EXPECT_NEAR(rc.q_tot, 70415.0, 0.05 * 70415.0);
  EXPECT_GT(rc.expected_wraps, 0.0);
  EXPECT_LT(rc.expected_wraps, 0.1);
}

TEST(RusCost, ConstantCurveClosedForm) {
  // p_suc = 1 and no wraps: Q_K = K Q(1), Q_tot = Q(1) E(K) = 2 Q(1)
  SuccessCurve flat({{1e-4, 1.0}});
  ResourceConstants rc;
  rc.wrap_threshold = 1e9;
  auto c = rus_cost(1e-9, flat, rc);
  EXPECT_NEAR(c.q_tot, 2 * 5832.0, 1e-6);
  EXPECT_LT(c.expected_wraps, 1e-15);  // only 2^63 phi crosses the threshold
}

TEST(RusCost, MonotoneInSuccessProbability) {
  auto base = SuccessCurve::reference_anchors();
  double prev = 1e300;
  for (double f : {0.5, 0.8, 1.0, 1.5, 3.0}) {
    double q = rus_cost(1e-3, base.scaled(f)).q_tot;
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(Compare, RatioIdentities) {
  CompareOptions opt;
  opt.q_tot = 70415.0;
  auto curve = SuccessCurve::reference_anchors();
  for (auto [n, t] : {std::pair<std::size_t, double>{10, 10}, {50, 50}, {100, 10}}) {
    auto r = compare_methods(n, t, 1e-3, 1e-3, curve, opt);
    // N_rot cancels: ratio = c_T C / Q_tot for every (N, T)
    EXPECT_NEAR(r.ratio_distillation, r.per_rotation_distillation, 1e-9 * r.ratio_distillation);
    EXPECT_NEAR(r.ratio_cultivation, r.per_rotation_cultivation, 1e-9 * r.ratio_cultivation);
    EXPECT_NEAR(r.ratio_distillation, 1337.5, 0.005 * 1337.5);
    EXPECT_NEAR(r.ratio_cultivation, 43.6, 0.005 * 43.6);
  }
}

TEST(Compare, CultivationValidityGate) {
  CompareOptions opt;
  opt.q_tot = 70415.0;
  auto curve = SuccessCurve::reference_anchors();
  EXPECT_TRUE(compare_methods(50, 50, 1e-3, 1e-3, curve, opt).cultivation_valid);
  auto big = compare_methods(100, 200, 1e-3, 1e-3, curve, opt);
  EXPECT_GT(big.counts.n_t, 5e8);
  EXPECT_FALSE(big.cultivation_valid);
  EXPECT_DOUBLE_EQ(big.cultivation_t_limit, 5e8);
}

TEST(TimeBudget, Values) {
  EXPECT_NEAR(simulation_time_budget(100, 1, 1e-3, 91), 31.4, 0.2);
  double a = simulation_time_budget(100, 1, 1e-3, 91);
  EXPECT_NEAR(simulation_time_budget(100, 1, 1e-3 / std::sqrt(10.0), 91), 10 * a, 1e-9 * a);
  auto r = compare_methods(100, 10, 1e-3, 1e-3, SuccessCurve::reference_anchors());
  EXPECT_NEAR(r.t_max, a, 1e-12);
}

TEST(Heisenberg, OneNormMatchesClosedForm) {
  for (std::size_t n : {4u, 10u, 11u})
    for (double h : {0.0, 1.0, 2.5}) {
      auto m = heisenberg(n, h);
      EXPECT_EQ(m.terms.size(), 4 * n);
      EXPECT_NEAR(m.one_norm(), m.closed_form_norm(), 1e-12);
      EXPECT_EQ(m.even.size() + m.odd.size(), m.terms.size());
    }
  // weaker fields lower the norm below the closed form
  auto m = heisenberg(4, 1.0, std::vector<double>{0.1, 0.1, 0.1, 0.1});
  EXPECT_LT(m.one_norm(), m.closed_form_norm());
  EXPECT_THROW(heisenberg(4, 1.0, std::vector<double>{0.1}), std::invalid_argument);
}

TEST(Report, JsonAndTable) {
  auto r = compare_methods(10, 10, 1e-3, 1e-3, SuccessCurve::reference_anchors());
  auto j = report_to_json(r);
  EXPECT_EQ(j.at("N").get<std::size_t>(), 10u);
  EXPECT_FALSE(report_table(r).empty());
}

}  // namespace
}  // namespace rotft

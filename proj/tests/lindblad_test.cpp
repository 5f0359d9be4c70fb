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
#include <cstdio>
#include <numbers>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "rotft/lindblad.h"

namespace rotft {
namespace {

constexpr double kPi = std::numbers::pi;

StabilizerCode fixed_code() {
  return gauge_fixed(four_one_one_two(), PauliOperator::from_string("ZZII"));
}

Mat rzz(double phi) {
  Mat zz = kron(pauli_1q('Z'), pauli_1q('Z'));
  return expm_hermitian(-zz, phi);  // exp(i phi ZZ)
}

Mat random_state(int d, unsigned seed) {
  std::srand(seed);
  Mat a = Mat::Random(d, d);
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

TEST(Lindblad, NoiselessDirectGateIsZZRotation) {
  GateParams gp;
  for (double phi : {0.3, -0.2, kPi / 4}) {
    auto m = direct_gate_model(phi, gp);
    Mat rho = random_state(4, 5);
    Mat out = evolve_full(m, rho);
    Mat r = rzz(phi);
    EXPECT_LT(trace_norm(out - r * rho * r.adjoint()), 1e-9) << phi;
  }
}

TEST(Lindblad, ZeroAngleIsIdentity) {
  GateParams gp;
  gp.gamma = 1e5;
  auto m = direct_gate_model(0.0, gp);
  Mat rho = random_state(4, 9);
  EXPECT_LT(trace_norm(evolve_full(m, rho) - rho), 1e-14);
}

TEST(Lindblad, SingleQubitDephasingMatchesClosedForm) {
  LindbladModel m;
  m.dims = {2};
  double gamma = 3e5, t = 2e-6;
  m.stages.push_back({"idle", t, Mat::Zero(2, 2), {}});
  Mat n = Mat::Zero(2, 2);
  n(1, 1) = 1;
  m.jumps.push_back({"phi", n, gamma});
  Mat plus = Mat::Constant(2, 2, 0.5);
  Mat out = evolve_full(m, plus);
  EXPECT_NEAR(out(0, 1).real(), 0.5 * std::exp(-gamma * t / 2), 1e-12);
  EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-14);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
}

TEST(Lindblad, PropagatorIsCompletelyPositiveAndTracePreserving) {
  GateParams gp;
  gp.gamma = 2e6;
  for (auto kind : {GateKind::kDirect, GateKind::kAncilla}) {
    auto m = gate_model(kind, 0.4, gp);
    Mat s = full_propagator(m);
    int d = m.dim();
    Mat c = choi_matrix(s, d);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (c + c.adjoint()));
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-9);
    Vec vi = vec(Mat::Identity(d, d));
    EXPECT_LT((vi.adjoint() * s - vi.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Lindblad, NoiselessAncillaCircuitReturnsAncillaToGround) {
  GateParams gp;
  for (double phi : {0.0, 0.05, kPi / 4}) {
    auto m = ancilla_gate_model(phi, gp);
    Mat s = full_propagator(m);
    Mat r = rzz(phi);
    double worst = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Mat e = Mat::Zero(4, 4);
        e(a, b) = 1;
        Mat in = attach_subsystem(e, m.dims, 0, 0);
        Mat out = apply_superop(s, in);
        Mat want = attach_subsystem(r * e * r.adjoint(), m.dims, 0, 0);
        worst = std::max(worst, (out - want).cwiseAbs().maxCoeff());
      }
    EXPECT_LT(worst, 1e-8) << phi;
  }
}

TEST(Dyson, OrderZeroIsUnitaryConjugation) {
  GateParams gp;
  gp.gamma = 1e6;
  auto m = direct_gate_model(0.6, gp);
  Mat rho = random_state(4, 2);
  DysonPropagator p{m, 0, 201};
  Mat r = rzz(0.6);
  EXPECT_LT(trace_norm(evolve_truncated(p, rho) - r * rho * r.adjoint()), 1e-12);
  EXPECT_THROW(dyson_term(DysonPropagator{m, 1, 2}, rho, 1), std::invalid_argument);
}

TEST(Dyson, FirstOrderTruncationErrorIsQuadratic) {
  GateParams gp;
  double phi = kPi / 4;
  double T = phi / gp.chi;
  Mat rho = random_state(4, 3);
  std::vector<double> xs, ys;
  for (double gt : {1e-4, 1e-3, 1e-2}) {
    gp.gamma = gt / T;
    auto m = direct_gate_model(phi, gp);
    DysonPropagator p{m, 1, 201};
    double err = trace_norm(evolve_full(m, rho) - evolve_truncated(p, rho));
    xs.push_back(std::log(gt));
    ys.push_back(std::log(err));
  }
  double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
  EXPECT_NEAR(slope, 2.0, 0.1);
}

TEST(Dyson, SecondOrderImprovesTruncation) {
  GateParams gp;
  double phi = 0.5;
  gp.gamma = 1e-2 / (phi / gp.chi);
  auto m = direct_gate_model(phi, gp);
  Mat rho = random_state(4, 4);
  Mat full = evolve_full(m, rho);
  double e1 = trace_norm(full - evolve_truncated({m, 1, 401}, rho));
  double e2 = trace_norm(full - evolve_truncated({m, 2, 401}, rho));
  EXPECT_LT(e2, 0.2 * e1);
}

TEST(Dyson, TraceBookkeeping) {
  GateParams gp;
  gp.gamma = 1e6;
  auto m = ancilla_gate_model(0.3, gp);
  Mat rho = attach_subsystem(random_state(4, 8), m.dims, 0, 0);
  DysonPropagator p{m, 1, 101};
  Mat g1 = dyson_term(p, rho, 1);
  EXPECT_LT(std::abs(g1.trace()), 1e-12);
  EXPECT_NEAR(evolve_truncated(p, rho).trace().real(), 1.0, 1e-12);
}

TEST(Dyson, TruncationConstantStableAcrossAngles) {
  GateParams gp;
  std::vector<double> cs;
  for (double phi : {0.05, 0.3, kPi / 4}) {
    double T = phi / gp.chi;
    gp.gamma = 1e-3 / T;
    auto m = direct_gate_model(phi, gp);
    Mat rho = random_state(4, 6);
    double err = trace_norm(evolve_full(m, rho) - evolve_truncated({m, 1, 201}, rho));
    double sum_gt = 4 * gp.gamma * T;
    cs.push_back(err / (sum_gt * sum_gt));
  }
  double lo = *std::min_element(cs.begin(), cs.end()), hi = *std::max_element(cs.begin(), cs.end());
  EXPECT_LT(hi / lo, 2.0);
}

TEST(FtCheck, DispersiveAndAncillaGatesPassNaiveFails) {
  GateParams gp;
  gp.gamma = 1e4;
  auto code = fixed_code();
  for (double phi : {kPi / 4, 0.05}) {
    for (auto rs : {std::pair{1, 0}, std::pair{0, 1}}) {
      for (auto kind : {GateKind::kDirect, GateKind::kAncilla}) {
        auto v = check_ft_gate(gate_model(kind, phi, gp, true), code, logical_rz(phi), rs.first,
                               rs.second);
        EXPECT_TRUE(v.pass) << gate_kind_name(kind) << " " << v.cond1_residual << " "
                            << v.cond2_residual;
        EXPECT_LT(v.cond1_residual, 1e-9);
        EXPECT_LT(v.cond2_residual, 1e-9);
      }
    }
    auto naive = check_ft_gate(naive_gate_model(phi, gp, true), code, logical_rz(phi), 0, 1);
    EXPECT_FALSE(naive.cond2);
    EXPECT_TRUE(naive.cond1);
    EXPECT_GT(naive.cond2_residual, 1e-4);
    auto naive0 = check_ft_gate(naive_gate_model(phi, gp, true), code, logical_rz(phi), 1, 0);
    EXPECT_TRUE(naive0.pass);
  }
}

TEST(FtCheck, RelaxationJumpPropagatesToWeightOneClasses) {
  GateParams gp;
  auto code = fixed_code();
  double phi = 0.7;
  auto m = direct_gate_model(phi, gp, true);
  for (double f : {0.0, 0.5, 1.0}) {
    auto rep = verify_jump_propagation(m, code, "eg:D0", f, logical_rz(phi));
    std::vector<std::string> got;
    for (auto& p : rep.support) got.push_back(p.letters());
    std::sort(got.begin(), got.end());
    std::vector<std::string> allowed = {"XIII", "XIZI", "YIII", "YIZI"};
    for (auto& g : got) EXPECT_TRUE(std::find(allowed.begin(), allowed.end(), g) != allowed.end()) << g;
    EXPECT_TRUE(rep.support_in_filter);
    EXPECT_LT(rep.jump_cond1_residual, 1e-9);
    EXPECT_LT(rep.jump_code_weight, 1e-9);
    EXPECT_LT(rep.back_cond1_residual, 1e-9);
    EXPECT_LT(rep.back_cond2_residual, 1e-9);
  }
  auto mid = verify_jump_propagation(m, code, "eg:D0", 0.5, logical_rz(phi));
  EXPECT_EQ(mid.support.size(), 4u);
}

TEST(FtCheck, AncillaJumpsSatisfyJumpAndBackactionConditions) {
  GateParams gp;
  auto code = fixed_code();
  double phi = 0.3;
  auto m = ancilla_gate_model(phi, gp, true);
  for (auto& j : m.jumps)
    for (double f : {0.1, 0.5, 0.9}) {
      auto rep = verify_jump_propagation(m, code, j.name, f, logical_rz(phi));
      EXPECT_LT(rep.jump_cond1_residual, 1e-9) << j.name;
      EXPECT_LT(rep.jump_cond2_residual, 1e-9) << j.name;
      EXPECT_LT(rep.back_cond1_residual, 1e-9) << j.name;
      EXPECT_LT(rep.back_cond2_residual, 1e-9) << j.name;
    }
}

TEST(DenseIo, MatrixBinaryRoundTrip) {
  Mat m = Mat::Random(3, 5);
  std::string path = ::testing::TempDir() + "/m.bin";
  write_matrix_binary(path, m);
  EXPECT_EQ(read_matrix_binary(path), m);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace rotft

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
#include <random>

#include <gtest/gtest.h>

#include "rotft/circuit.h"
#include "rotft/density_sim.h"
#include "rotft/frame.h"
#include "rotft/tableau.h"

namespace rotft {
namespace {

// Repetition-code style parity checks on 3 data qubits with 2 ancillas.
NoisyCircuit parity_circuit(double p, int rounds) {
  NoisyCircuit c(5);
  NoisyBuilder b(c, p);
  b.set_active({0, 1, 2, 3, 4});
  b.reset({0, 1, 2, 3, 4});
  b.tick();
  std::vector<std::size_t> prev;
  for (int r = 0; r < rounds; ++r) {
    b.cx({0, 3, 1, 4});
    b.tick();
    b.cx({1, 3, 2, 4});
    b.tick();
    std::size_t m = b.measure({3, 4});
    c.add_detector(r == 0 ? std::vector<std::size_t>{m} : std::vector<std::size_t>{prev[0], m});
    c.add_detector(r == 0 ? std::vector<std::size_t>{m + 1}
                          : std::vector<std::size_t>{prev[1], m + 1});
    prev = {m, m + 1};
    b.reset({3, 4});
    b.tick();
  }
  std::size_t m = b.measure({0, 1, 2});
  c.add_observable({m}, "Z0");
  return c;
}

TEST(Tableau, BellPairCorrelations) {
  Tableau t(2);
  t.h(0);
  t.cx(0, 1);
  EXPECT_EQ(t.peek(PauliOperator::from_string("ZZ")), 1);
  EXPECT_EQ(t.peek(PauliOperator::from_string("XX")), 1);
  EXPECT_EQ(t.peek(PauliOperator::from_string("YY")), -1);
  EXPECT_EQ(t.peek(PauliOperator::from_string("ZI")), 0);
  Rng rng(3);
  bool rnd = false;
  int a = t.measure(PauliOperator::from_string("ZI"), &rng, &rnd);
  EXPECT_TRUE(rnd);
  EXPECT_EQ(t.peek(PauliOperator::from_string("IZ")), a ? -1 : 1);
}

TEST(Tableau, SqrtZZMapsXToYZ) {
  Tableau t(2);
  t.reset_x(0, nullptr);
  t.sqrt_zz(0, 1);
  // exp(i pi/4 ZZ) X1 exp(-i pi/4 ZZ) = -Y Z
  EXPECT_EQ(t.peek(PauliOperator::from_string("YZ")), -1);
}

TEST(Circuit, TextRoundTrip) {
  auto c = parity_circuit(1e-3, 2);
  c.mpp({PauliOperator::from_string("ZZIII")});
  c.slot(3);
  auto back = NoisyCircuit::from_text(c.to_text());
  EXPECT_EQ(back.to_text(), c.to_text());
  EXPECT_EQ(back.detectors().size(), 4u);
  EXPECT_THROW(NoisyCircuit::from_text("QUBITS 2\nCX 0 0\n"), std::invalid_argument);
  EXPECT_THROW(NoisyCircuit::from_text("QUBITS 2\nFOO 0\n"), std::invalid_argument);
}

TEST(FrameSampler, NoiselessDetectorsNeverFire) {
  auto c = parity_circuit(0.0, 3);
  auto st = FrameSampler(c).sample(4096, 11);
  EXPECT_EQ(st.passed, st.shots);
  for (auto f : st.det_fires) EXPECT_EQ(f, 0u);
  EXPECT_EQ(st.obs_flips_pass[0], 0u);
}

TEST(FrameSampler, RejectsRandomDetector) {
  NoisyCircuit c(1);
  c.reset_x({0});
  auto m = c.measure({0});
  c.add_detector({m});
  EXPECT_THROW(FrameSampler{c}, std::invalid_argument);
}

TEST(FrameSampler, DeterministicAcrossThreadCounts) {
  auto c = parity_circuit(5e-3, 2);
  FrameSampler fs(c);
  setenv("ROTFT_THREADS", "1", 1);
  auto a = fs.sample(20000, 5);
  setenv("ROTFT_THREADS", "4", 1);
  auto b = fs.sample(20000, 5);
  unsetenv("ROTFT_THREADS");
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.det_fires, b.det_fires);
  EXPECT_EQ(a.obs_flips_pass, b.obs_flips_pass);
}

// Frame sampling agrees with the exact density simulation within 3 sigma.
TEST(FrameSampler, MatchesDensityOracle) {
  auto c = parity_circuit(2e-2, 2);
  DensitySimulator ds(c);
  ds.run();
  double pass = ds.pass_probability();
  double flip = ds.observable_flip_given_pass(0);
  auto st = FrameSampler(c).sample(200000, 9);
  double se = std::sqrt(pass * (1 - pass) / st.shots);
  EXPECT_NEAR(st.pass_rate(), pass, 4 * se + 1e-12);
  double fse = std::sqrt(flip * (1 - flip) / st.passed);
  EXPECT_NEAR(st.obs_rate(0), flip, 4 * fse + 1e-12);
}

TEST(DensitySimulator, TraceIsConservedAndNoiselessIsDeterministic) {
  auto c = parity_circuit(0.0, 2);
  DensitySimulator ds(c);
  ds.run();
  EXPECT_NEAR(ds.pass_probability(), 1.0, 1e-12);
  auto noisy = parity_circuit(0.05, 2);
  DensitySimulator dn(noisy);
  dn.run();
  double tot = 0;
  for (auto& [k, p] : dn.distribution()) tot += p;
  EXPECT_NEAR(tot, 1.0, 1e-12);
}

TEST(DensitySimulator, MppOnBellPair) {
  NoisyCircuit c(2);
  c.reset_x({0});
  c.reset({1});
  c.cx({0, 1});
  auto m = c.mpp({PauliOperator::from_string("XX"), PauliOperator::from_string("ZZ"),
                  PauliOperator::from_string("YY")});
  c.add_detector({m});
  c.add_detector({m + 1});
  c.add_observable({m, m + 1, m + 2});
  DensitySimulator ds(c);
  ds.run();
  EXPECT_NEAR(ds.pass_probability(), 1.0, 1e-12);
  EXPECT_NEAR(ds.observable_flip_given_pass(0), 0.0, 1e-12);
  auto st = FrameSampler(c).sample(1024, 1);
  EXPECT_EQ(st.obs_flips_pass[0], 0u);
}

}  // namespace
}  // namespace rotft

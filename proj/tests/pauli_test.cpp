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

#include <random>

#include <gtest/gtest.h>

#include "rotft/dense.h"
#include "rotft/pauli.h"

namespace rotft {
namespace {

PauliOperator random_pauli(std::size_t n, std::mt19937_64& rng) {
  PauliOperator p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, rng() & 1, rng() & 1);
  p.set_phase(static_cast<int>(rng() % 4));
  return p;
}

TEST(PauliOperator, ParseAndPrint) {
  auto p = PauliOperator::from_string("-iXYZI");
  EXPECT_EQ(p.n_qubits(), 4u);
  EXPECT_EQ(p.phase(), 3);
  EXPECT_EQ(p.str(), "-iXYZI");
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_EQ(PauliOperator(5).weight(), 0u);
}

TEST(PauliOperator, SingleQubitProducts) {
  auto x = PauliOperator::from_string("X"), y = PauliOperator::from_string("Y"),
       z = PauliOperator::from_string("Z");
  EXPECT_EQ(x * y, PauliOperator::from_string("iZ"));
  EXPECT_EQ(y * x, PauliOperator::from_string("-iZ"));
  EXPECT_EQ(z * x, PauliOperator::from_string("iY"));
  EXPECT_EQ(y * z, PauliOperator::from_string("iX"));
}

TEST(PauliOperator, ProductMatchesDenseMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 4;
    auto a = random_pauli(n, rng), b = random_pauli(n, rng);
    Mat lhs = pauli_matrix(a * b);
    Mat rhs = pauli_matrix(a) * pauli_matrix(b);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << a.str() << " " << b.str();
    Mat comm = pauli_matrix(a) * pauli_matrix(b) - pauli_matrix(b) * pauli_matrix(a);
    EXPECT_EQ(a.commutes(b), comm.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST(PauliOperator, AssociativeAndSquaresToPlusMinusIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 130;
    auto a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    auto sq = a * a;
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(sq.phase() % 2, 0);
  }
}

TEST(PauliOperator, CommutationIsSymplecticParity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 70;
    auto a = random_pauli(n, rng), b = random_pauli(n, rng);
    int par = 0;
    for (std::size_t q = 0; q < n; ++q) par ^= (a.x(q) & b.z(q)) ^ (a.z(q) & b.x(q));
    EXPECT_EQ(a.commutes(b), par == 0);
    // ab = +-ba with the sign given by the parity.
    auto ab = a * b, ba = b * a;
    EXPECT_TRUE(ab.same_letters(ba));
    EXPECT_EQ((ab.phase() - ba.phase() + 4) % 4, par ? 2 : 0);
  }
}

TEST(PauliOperator, CanonicalOrder) {
  auto x0 = PauliOperator::from_string("XIII"), x1 = PauliOperator::from_string("IXII");
  auto z0 = PauliOperator::from_string("ZIII"), y0 = PauliOperator::from_string("YIII");
  EXPECT_TRUE(PauliOperator::canonical_less(x0, x1));
  EXPECT_TRUE(PauliOperator::canonical_less(x0, y0));
  EXPECT_TRUE(PauliOperator::canonical_less(y0, z0));
  EXPECT_TRUE(PauliOperator::canonical_less(z0, PauliOperator::from_string("XXII")));
}

TEST(PauliOperator, IndexRoundTrip) {
  auto all = all_paulis(3);
  ASSERT_EQ(all.size(), 64u);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(pauli_index(all[i]), i);
}

}  // namespace
}  // namespace rotft

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
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rotft/builders.h"
#include "rotft/code.h"
#include "rotft/density_sim.h"
#include "rotft/frame.h"
#include "rotft/tableau.h"

namespace rotft {
namespace {

Tableau final_tableau(const NoisyCircuit& c) {
  Tableau t(c.n_qubits());
  for (auto& o : c.ops()) {
    switch (o.type) {
      case OpType::kReset:
        for (auto q : o.targets) t.reset(q, nullptr);
        break;
      case OpType::kResetX:
        for (auto q : o.targets) t.reset_x(q, nullptr);
        break;
      case OpType::kCX:
        for (std::size_t i = 0; i < o.targets.size(); i += 2) t.cx(o.targets[i], o.targets[i + 1]);
        break;
      case OpType::kTick:
        break;
      default:
        ADD_FAILURE() << "unexpected op " << op_name(o.type);
    }
  }
  return t;
}

TEST(Prep4112, NoiselessStateIsPlusLogicalWithGaugeZero) {
  auto c = build_prep_4112(0.0);
  auto t = final_tableau(c);
  for (const char* s : {"ZZZZ", "XXXX", "ZZII", "XXII"})
    EXPECT_EQ(t.peek(PauliOperator::from_string(s)), 1) << s;
  EXPECT_EQ(t.peek(PauliOperator::from_string("ZIZI")), 0);
  EXPECT_EQ(c.count(OpType::kCX), 2u);
  EXPECT_EQ(c.depth(), 2u);
}

// Every single fault of the noisy preparation either is removed by the
// ideal QED decoder or leaves the logical |+> state intact.
TEST(Prep4112, ExhaustiveSingleFaultsDecodeToPlus) {
  auto noisy = build_prep_4112(1e-3);
  auto code = four_one_one_two();
  auto fixed = gauge_fixed(code, code.gauge_ops[0]);
  Mat filt = *filter_projector(fixed, 1).projector;
  Mat plus = Mat::Constant(2, 2, 0.5);
  int faults = 0;
  for (std::size_t i = 0; i < noisy.ops().size(); ++i) {
    const auto& o = noisy.ops()[i];
    if (!is_noise(o.type)) continue;
    std::size_t width = is_two_qubit(o.type) ? 2 : 1;
    for (std::size_t g = 0; g < o.targets.size(); g += width) {
      std::vector<std::size_t> tg(o.targets.begin() + g, o.targets.begin() + g + width);
      auto paulis = all_paulis(width);
      for (std::size_t k = 1; k < paulis.size(); ++k) {
        NoisyCircuit c(4);
        for (std::size_t j = 0; j <= i; ++j)
          if (!is_noise(noisy.ops()[j].type)) c.append(noisy.ops()[j]);
        c.pauli(paulis[k].embed(4, tg));
        for (std::size_t j = i + 1; j < noisy.ops().size(); ++j)
          if (!is_noise(noisy.ops()[j].type)) c.append(noisy.ops()[j]);
        DensitySimulator ds(c);
        ds.run();
        Mat rho = ds.passing_state();
        EXPECT_NEAR((filt * rho * filt).trace().real(), 1.0, 1e-12);
        auto dec = ideal_decode(rho, code, DecodeMode::kQED);
        if (dec.pass) {
          Mat l = subsystem_logical_state(dec.physical, code);
          EXPECT_LT((l - plus).cwiseAbs().maxCoeff(), 1e-12) << "op " << i << " " << paulis[k].str();
        }
        ++faults;
      }
    }
  }
  EXPECT_GT(faults, 20);
}

TEST(Qed4112, NoiselessDetectorsAreDeterministic) {
  auto c = build_qed_zx_4112(0.0);
  EXPECT_EQ(c.detectors().size(), 3u);
  auto st = FrameSampler(c).sample(2048, 1);
  EXPECT_EQ(st.passed, st.shots);
  EXPECT_EQ(c.count(OpType::kCX), 2u + 8u);
}

TEST(Qed4112, SingleDataErrorsAreDetected) {
  // Any weight-1 data Pauli before the QED (other than gauge-like ones that
  // commute with everything measured) fires a detector.
  NoisyCircuit base(6);
  NoisyBuilder b(base, 0.0);
  append_prep_4112(b, {0, 1, 2, 3});
  NoisyCircuit clean = base;
  NoisyBuilder bc(clean, 0.0);
  append_qed_zx_4112(bc, {0, 1, 2, 3}, {4, 5});
  auto ref = DensitySimulator(clean).reference();
  for (std::size_t q = 0; q < 4; ++q)
    for (char l : {'X', 'Y', 'Z'}) {
      NoisyCircuit c = base;
      NoisyBuilder bb(c, 0.0);
      c.pauli(PauliOperator::single(6, q, l));
      append_qed_zx_4112(bb, {0, 1, 2, 3}, {4, 5});
      DensitySimulator ds(c, ref);
      ds.run();
      EXPECT_NEAR(ds.pass_probability(), 0.0, 1e-12) << q << l;
    }
}

TEST(SurfaceRounds, DeterministicAndScheduleValid) {
  for (auto [dz, dx] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 5}, std::pair{6, 7}}) {
    auto c = build_surface_rounds(dz, dx, 3, 0.0);
    FrameSampler fs(c);
    auto st = fs.sample(1024, 2);
    EXPECT_EQ(st.passed, st.shots);
    EXPECT_EQ(st.obs_flips_pass[0], 0u);
  }
}

// A single fault on any CX touching a Z-plaquette ancilla leaves at most one
// data Z on the logical-Z row by the end of the round, up to that
// plaquette's own stabilizer (and likewise for X faults and column 0).
TEST(SurfaceRounds, HookErrorsAvoidLogicalZRow) {
  for (auto [dz, dx] : {std::pair{3, 3}, std::pair{4, 5}, std::pair{6, 7}}) {
    auto L = SurfaceLayout::make(dz, dx);
    auto c = build_surface_rounds(dz, dx, 1, 1e-3);
    std::set<std::size_t> zanc, xanc;
    std::map<std::size_t, std::size_t> plaq_of;
    for (std::size_t j = 0; j < L.plaquettes.size(); ++j) {
      (L.plaquettes[j].type == 'Z' ? zanc : xanc).insert(L.anc[j]);
      plaq_of[L.anc[j]] = j;
    }
    std::size_t end_op = 0;
    for (std::size_t i = 0; i < c.ops().size(); ++i)
      if (c.ops()[i].type == OpType::kMeasure) {
        end_op = i;
        break;
      }
    auto p2 = all_paulis(2);
    int checked = 0;
    for (std::size_t i = 0; i < end_op; ++i) {
      const auto& o = c.ops()[i];
      if (o.type != OpType::kCX) continue;
      for (std::size_t g = 0; g < o.targets.size(); g += 2) {
        std::size_t a = o.targets[g], t = o.targets[g + 1];
        bool z_anc = zanc.count(t), x_anc = xanc.count(a);
        for (std::size_t k = 1; k < 16; ++k) {
          auto e = c.propagate(i, p2[k].embed(c.n_qubits(), {a, t}));
          auto stab = L.plaquette_op(plaq_of[z_anc ? t : a], c.n_qubits());
          auto count = [&](const PauliOperator& f, std::size_t& zrow, std::size_t& xcol) {
            zrow = xcol = 0;
            for (std::size_t col = 0; col < dz; ++col) zrow += f.z(L.qubit(0, col));
            for (std::size_t row = 0; row < dx; ++row) xcol += f.x(L.qubit(row, 0));
          };
          std::size_t zrow, xcol, zrow2, xcol2;
          count(e, zrow, xcol);
          count(e * stab, zrow2, xcol2);
          zrow = std::min(zrow, zrow2);
          xcol = std::min(xcol, xcol2);
          if (z_anc) {
            EXPECT_LE(zrow, 1u) << "Z hook on row 0 at op " << i;
          }
          if (x_anc) {
            EXPECT_LE(xcol, 1u) << "X hook on column 0 at op " << i;
          }
          ++checked;
        }
      }
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(Expansion, NoiselessPassesAndKeepsLogicalState) {
  for (std::size_t d : {3u, 5u})
    for (bool gate : {false, true}) {
      ExpansionSpec s;
      s.d = d;
      s.p = 0.0;
      s.with_gate = gate;
      auto e = build_expansion(s);
      FrameSampler fs(e.circuit);
      auto st = fs.sample(2048, 3);
      EXPECT_EQ(st.passed, st.shots);
      for (auto f : st.obs_flips_pass) EXPECT_EQ(f, 0u);
      // Round-1 detectors fixed by the expansion exist.
      int fixed = 0;
      for (auto& det : e.circuit.detectors()) fixed += det.tag == "expand";
      EXPECT_GE(fixed, 4);
    }
  ExpansionSpec bad;
  bad.d = 4;
  EXPECT_THROW(build_expansion(bad), std::invalid_argument);
  bad.d = 3;
  bad.rounds = 1;
  EXPECT_THROW(build_expansion(bad), std::invalid_argument);
}

TEST(Expansion, LogicalErrorsFlipExpectedObservables) {
  // With the gate, B reads Y_L X_R: logical X after the gate flips A and B
  // (so not AB); logical Z flips B and AB.
  ExpansionSpec s;
  s.p = 0.0;
  auto e = build_expansion(s);
  const auto& c = e.circuit;
  std::size_t after_gate = 0;
  for (std::size_t i = 0; i < c.ops().size(); ++i)
    if (c.ops()[i].type == OpType::kSqrtZZ) after_gate = i;
  NoisyCircuit with_x(c.n_qubits()), with_z(c.n_qubits());
  for (std::size_t i = 0; i < c.ops().size(); ++i) {
    with_x.append(c.ops()[i]);
    with_z.append(c.ops()[i]);
    if (i == after_gate) {
      // Bare logicals of the [[4,1,1,2]] block: X on code qubits 0,1, Z on 0,2.
      with_x.pauli(PauliOperator::on(c.n_qubits(), {e.block[0], e.block[1]}, 'X'));
      with_z.pauli(PauliOperator::on(c.n_qubits(), {e.block[0], e.block[2]}, 'Z'));
    }
  }
  for (auto& d : c.detectors()) {
    with_x.add_detector(d.meas, d.postselect, d.tag);
    with_z.add_detector(d.meas, d.postselect, d.tag);
  }
  for (auto& o : c.observables()) {
    with_x.add_observable(o.meas, o.name);
    with_z.add_observable(o.meas, o.name);
  }
  auto ref = FrameSampler(c);
  auto rx = run_tableau(with_x, nullptr, false), rz = run_tableau(with_z, nullptr, false);
  auto parity = [](const std::vector<std::uint8_t>& rec, const std::vector<std::size_t>& m) {
    std::uint8_t v = 0;
    for (auto i : m) v ^= rec[i];
    return v;
  };
  std::vector<int> fx, fz;
  for (std::size_t o = 0; o < 3; ++o) {
    fx.push_back(parity(rx, c.observables()[o].meas) ^ ref.observable_reference()[o]);
    fz.push_back(parity(rz, c.observables()[o].meas) ^ ref.observable_reference()[o]);
  }
  EXPECT_EQ(fx, (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(fz, (std::vector<int>{0, 1, 1}));
}

TEST(Projection, NoiselessDetectorsAndBStringSignatures) {
  for (std::size_t m : {2u, 3u}) {
    ProjectionSpec s;
    s.m = m;
    s.k = 3;
    s.p = 0.0;
    auto pc = build_projection_circuit(s);
    FrameSampler fs(pc.circuit);
    auto st = fs.sample(1024, 4);
    EXPECT_EQ(st.passed, st.shots);
    // A single group flip is detected; flipping every group (Z_L) is not.
    HookMap one{{0, [&](FrameBatch& f, Rng&) {
                   for (std::size_t s2 = 0; s2 < f.shots(); ++s2)
                     for (auto q : pc.groups[1]) f.apply(q, 'Z', s2);
                 }}};
    EXPECT_EQ(fs.sample(256, 5, one).passed, 0u);
    HookMap all{{0, [&](FrameBatch& f, Rng&) {
                   for (std::size_t s2 = 0; s2 < f.shots(); ++s2)
                     for (auto& g : pc.groups)
                       for (auto q : g) f.apply(q, 'Z', s2);
                 }}};
    EXPECT_EQ(fs.sample(256, 5, all).passed, 256u);
  }
}

TEST(Circuit, ExpansionTextRoundTrip) {
  ExpansionSpec s;
  s.gate_noise = depolarizing(2, 1e-3);
  auto e = build_expansion(s);
  auto text = e.circuit.to_text();
  EXPECT_EQ(NoisyCircuit::from_text(text).to_text(), text);
}

}  // namespace
}  // namespace rotft

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

#include "rotft/builders.h"

#include <stdexcept>

namespace rotft {

namespace {

std::vector<std::size_t> cat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Z plaquettes: TL, BL, TR, BR. X plaquettes: TL, TR, BL, BR.
constexpr int kZOrder[4] = {0, 2, 1, 3};
constexpr int kXOrder[4] = {0, 1, 2, 3};

}  // namespace

void append_prep_4112(NoisyBuilder& b, const Quad& q) {
  b.activate({q.begin(), q.end()});
  b.reset_x({q[0], q[2]});
  b.reset({q[1], q[3]});
  b.tick();
  b.cx({q[0], q[1], q[2], q[3]});
  b.tick();
}

QedRecord append_qed_zx_4112(NoisyBuilder& b, const Quad& q, const std::array<std::size_t, 2>& anc,
                             bool detectors) {
  std::vector<std::size_t> a{anc[0], anc[1]};
  QedRecord r;
  b.activate(a);
  b.reset(a);
  b.tick();
  b.cx({q[0], anc[0], q[2], anc[1]});
  b.tick();
  b.cx({q[1], anc[0], q[3], anc[1]});
  b.tick();
  r.z_left = b.measure(a);
  r.z_right = r.z_left + 1;
  b.reset_x(a);
  b.tick();
  b.cx({anc[0], q[0], anc[1], q[1]});
  b.tick();
  b.cx({anc[0], q[2], anc[1], q[3]});
  b.tick();
  r.x_top = b.measure_x(a);
  r.x_bottom = r.x_top + 1;
  b.tick();
  b.deactivate(a);
  if (detectors) {
    auto& c = b.circuit();
    c.add_detector({r.z_left}, true, "qed_z");
    c.add_detector({r.z_right}, true, "qed_z");
    c.add_detector({r.x_top, r.x_bottom}, true, "qed_x");
  }
  return r;
}

NoisyCircuit build_prep_4112(double p) {
  NoisyCircuit c(4);
  NoisyBuilder b(c, p);
  append_prep_4112(b, {0, 1, 2, 3});
  return c;
}

NoisyCircuit build_qed_zx_4112(double p) {
  NoisyCircuit c(6);
  NoisyBuilder b(c, p);
  append_prep_4112(b, {0, 1, 2, 3});
  append_qed_zx_4112(b, {0, 1, 2, 3}, {4, 5});
  return c;
}

SurfaceLayout SurfaceLayout::make(std::size_t dz, std::size_t dx, std::size_t first_qubit) {
  SurfaceLayout L;
  L.dz = dz;
  L.dx = dx;
  L.plaquettes = surface_plaquettes(dz, dx);
  for (std::size_t i = 0; i < dz * dx; ++i) L.data.push_back(first_qubit + i);
  for (std::size_t j = 0; j < L.plaquettes.size(); ++j)
    L.anc.push_back(first_qubit + dz * dx + j);
  return L;
}

PauliOperator SurfaceLayout::lift(const PauliOperator& code_op, std::size_t n) const {
  PauliOperator out(n);
  for (std::size_t i = 0; i < data.size(); ++i)
    if (code_op.x(i) || code_op.z(i)) out.set(data[i], code_op.x(i), code_op.z(i));
  return out;
}

PauliOperator SurfaceLayout::plaquette_op(std::size_t j, std::size_t n) const {
  std::vector<std::size_t> qs;
  for (auto i : plaquettes[j].qubits()) qs.push_back(data[i]);
  return PauliOperator::on(n, qs, plaquettes[j].type);
}

std::vector<std::size_t> append_se_round(NoisyBuilder& b, const SurfaceLayout& L,
                                         const std::vector<std::size_t>& reset_z,
                                         const std::vector<std::size_t>& reset_x,
                                         bool hadamard_basis) {
  std::vector<std::size_t> za, xa;
  for (std::size_t j = 0; j < L.plaquettes.size(); ++j)
    (L.plaquettes[j].type == 'Z' ? za : xa).push_back(L.anc[j]);
  b.activate(L.anc);
  b.activate(reset_z);
  b.activate(reset_x);
  auto rz = cat(za, reset_z), rx = cat(xa, reset_x);
  if (hadamard_basis) {
    b.reset(cat(rz, rx));
    b.tick_fast();
    if (!rx.empty()) b.h(rx);
  } else {
    if (!rz.empty()) b.reset(rz);
    if (!rx.empty()) b.reset_x(rx);
  }
  b.tick_fast();
  std::size_t n = b.circuit().n_qubits();
  for (int s = 0; s < 4; ++s) {
    std::vector<std::size_t> pairs;
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < L.plaquettes.size(); ++j) {
      const auto& pl = L.plaquettes[j];
      int corner = pl.corners[pl.type == 'Z' ? kZOrder[s] : kXOrder[s]];
      if (corner < 0) continue;
      std::size_t dq = L.data[static_cast<std::size_t>(corner)];
      if (used[dq]) throw std::logic_error("syndrome schedule collision");
      used[dq] = true;
      if (pl.type == 'Z') {
        pairs.push_back(dq);
        pairs.push_back(L.anc[j]);
      } else {
        pairs.push_back(L.anc[j]);
        pairs.push_back(dq);
      }
    }
    if (!pairs.empty()) b.cx(pairs);
    b.tick();
  }
  std::vector<std::size_t> idx(L.plaquettes.size());
  std::size_t mz = 0, mx = 0;
  if (hadamard_basis) {
    if (!xa.empty()) b.h(xa);
    b.tick_fast();
    mz = b.measure(cat(za, xa));
    mx = mz + za.size();
  } else {
    mz = za.empty() ? 0 : b.measure(za);
    mx = xa.empty() ? 0 : b.measure_x(xa);
  }
  std::size_t iz = 0, ix = 0;
  for (std::size_t j = 0; j < L.plaquettes.size(); ++j)
    idx[j] = L.plaquettes[j].type == 'Z' ? mz + iz++ : mx + ix++;
  b.tick();
  b.deactivate(L.anc);
  return idx;
}

std::vector<std::size_t> append_perfect_round(NoisyCircuit& c, const SurfaceLayout& L) {
  std::vector<PauliOperator> ops;
  for (std::size_t j = 0; j < L.plaquettes.size(); ++j) ops.push_back(L.plaquette_op(j, c.n_qubits()));
  std::size_t first = c.mpp(ops);
  std::vector<std::size_t> idx(ops.size());
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = first + j;
  return idx;
}

NoisyCircuit build_surface_rounds(std::size_t dz, std::size_t dx, std::size_t rounds, double p) {
  if (rounds < 1) throw std::invalid_argument("build_surface_rounds: rounds >= 1");
  auto L = SurfaceLayout::make(dz, dx);
  NoisyCircuit c(L.n_used());
  NoisyBuilder b(c, p);
  std::vector<std::size_t> prev;
  for (std::size_t r = 0; r < rounds; ++r) {
    auto cur = append_se_round(b, L, r == 0 ? L.data : std::vector<std::size_t>{});
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (r == 0) {
        if (L.plaquettes[j].type == 'Z') c.add_detector({cur[j]}, true, "init");
      } else {
        c.add_detector({prev[j], cur[j]}, true, "round");
      }
    }
    prev = cur;
  }
  std::size_t m = b.measure(L.data);
  for (std::size_t j = 0; j < L.plaquettes.size(); ++j) {
    if (L.plaquettes[j].type != 'Z') continue;
    std::vector<std::size_t> det{prev[j]};
    for (auto q : L.plaquettes[j].qubits()) det.push_back(m + q);
    c.add_detector(det, true, "final");
  }
  std::vector<std::size_t> obs;
  for (std::size_t col = 0; col < dz; ++col) obs.push_back(m + col * dx);
  c.add_observable(obs, "Z_L");
  return c;
}

ExpansionCircuit build_expansion(const ExpansionSpec& spec) {
  if (spec.d != 3 && spec.d != 5) throw std::invalid_argument("expansion supports d = 3 or 5");
  if (spec.rounds < 2) throw std::invalid_argument("expansion needs at least 2 rounds");
  const std::size_t d = spec.d;
  ExpansionCircuit out;
  out.layout = SurfaceLayout::make(d, d);
  const auto& L = out.layout;
  out.ref = L.n_used();
  NoisyCircuit c(out.ref + 1);
  NoisyBuilder b(c, spec.p, spec.idle_noise);
  b.set_fast_layer_idle(spec.fast_layer_idle);
  const std::size_t n = c.n_qubits();
  // Block qubit 2*col + row sits at grid (row, d - 2 + col): top-right corner.
  for (std::size_t col = 0; col < 2; ++col)
    for (std::size_t row = 0; row < 2; ++row) out.block[2 * col + row] = L.qubit(row, d - 2 + col);
  const auto& q = out.block;

  append_prep_4112(b, q);
  c.reset_x({out.ref});
  PauliOperator zl_block = PauliOperator::on(n, {q[0], q[2], out.ref}, 'Z');
  std::size_t m_ref = c.mpp({zl_block});
  if (spec.with_gate) c.sqrt_zz({q[0], q[2]});
  if (spec.gate_noise.probs[0] < 1.0) c.pauli_channel_2({q[0], q[2]}, spec.gate_noise);
  b.touch({q[0], q[2]});
  b.tick();
  auto qed = append_qed_zx_4112(b, q, {L.anc[0], L.anc[1]});

  std::vector<bool> in_block(n, false);
  for (auto x : q) in_block[x] = true;
  std::vector<std::size_t> rz, rx;
  std::vector<char> basis(n, 0);
  for (std::size_t col = 0; col < d; ++col)
    for (std::size_t row = 0; row < d; ++row) {
      std::size_t x = L.qubit(row, col);
      if (in_block[x]) continue;
      if (row < 2) {
        rz.push_back(x);
        basis[x] = 'Z';
      } else {
        rx.push_back(x);
        basis[x] = 'X';
      }
    }
  std::vector<std::size_t> prev = append_se_round(b, L, rz, rx, spec.hadamard_basis);
  // First-round detectors on plaquettes fixed by the expansion.
  for (std::size_t j = 0; j < L.plaquettes.size(); ++j) {
    const auto& pl = L.plaquettes[j];
    bool det = true;
    PauliOperator part(4);
    for (auto i : pl.qubits()) {
      std::size_t x = L.data[i];
      if (in_block[x]) {
        for (std::size_t a = 0; a < 4; ++a)
          if (q[a] == x) part.set(a, pl.type);
      } else if (basis[x] != pl.type) {
        det = false;
      }
    }
    if (!det) continue;
    std::string s = part.letters();
    std::vector<std::size_t> meas{prev[j]};
    if (pl.type == 'Z') {
      if (s != "IIII" && s != "ZZZZ") continue;
    } else {
      if (s == "XIXI") meas.push_back(qed.x_top);
      else if (s == "IXIX") meas.push_back(qed.x_bottom);
      else if (s == "XXXX") meas.insert(meas.end(), {qed.x_top, qed.x_bottom});
      else if (s != "IIII") continue;
    }
    c.add_detector(meas, true, "expand");
  }
  for (std::size_t r = 1; r < spec.rounds; ++r) {
    auto cur = append_se_round(b, L, {}, {}, spec.hadamard_basis);
    for (std::size_t j = 0; j < cur.size(); ++j) c.add_detector({prev[j], cur[j]}, true, "round");
    prev = cur;
  }
  if (spec.final_perfect_round) {
    auto cur = append_perfect_round(c, L);
    for (std::size_t j = 0; j < cur.size(); ++j) c.add_detector({prev[j], cur[j]}, true, "final");
  }
  // Logical operators: Z along row 0, X along the last column.
  PauliOperator zl(n), xl(n);
  for (std::size_t col = 0; col < d; ++col) zl.set(L.qubit(0, col), 'Z');
  for (std::size_t row = 0; row < d; ++row) xl.set(L.qubit(row, d - 1), 'X');
  PauliOperator a_op = zl;
  a_op.set(out.ref, 'Z');
  PauliOperator b_op(n);
  for (std::size_t x = 0; x < n; ++x) {
    bool xx = xl.x(x), zz = spec.with_gate && zl.z(x);
    if (xx || zz) b_op.set(x, xx, zz);
  }
  b_op.set(out.ref, 'X');
  std::size_t ma = c.mpp({a_op, b_op});
  c.add_observable({m_ref, ma}, "A");
  c.add_observable({ma + 1}, "B");
  c.add_observable({m_ref, ma, ma + 1}, "AB");
  out.circuit = std::move(c);
  return out;
}

ProjectionCircuit build_projection_circuit(const ProjectionSpec& spec) {
  if (spec.m != 2 && spec.m != 3) throw std::invalid_argument("projection: m must be 2 or 3");
  if (spec.k < 1) throw std::invalid_argument("projection: k >= 1");
  if (spec.qed_rounds < 1) throw std::invalid_argument("projection: qed_rounds >= 1");
  const std::size_t d = spec.m * spec.k;
  ProjectionCircuit out;
  out.layout = SurfaceLayout::make(d, d + 1);
  const auto& L = out.layout;
  NoisyCircuit c(L.n_used());
  NoisyBuilder b(c, spec.p, spec.idle_noise);
  b.set_fast_layer_idle(spec.fast_layer_idle);
  auto in_region = [&](std::size_t j) {
    int last = static_cast<int>(spec.region_bands) - 2;
    const auto& pl = L.plaquettes[j];
    return pl.row <= last || (spec.close_region && pl.row == last + 1 && pl.type == 'X');
  };
  auto prev = append_se_round(b, L, {}, L.data, spec.hadamard_basis);
  for (std::size_t j = 0; j < prev.size(); ++j)
    if (in_region(j) && L.plaquettes[j].type == 'X') c.add_detector({prev[j]}, true, "prep");
  c.slot(0);
  for (std::size_t i = 0; i < spec.k; ++i) {
    std::vector<std::size_t> g;
    for (std::size_t t = 0; t < spec.m; ++t) g.push_back(L.qubit(0, spec.m * i + t));
    out.groups.push_back(g);
  }
  bool noisy_gate = spec.gate_noise.probs[0] < 1.0;
  if (spec.m == 2) {
    std::vector<std::size_t> pairs;
    for (auto& g : out.groups) pairs.insert(pairs.end(), g.begin(), g.end());
    if (noisy_gate) c.pauli_channel_2(pairs, spec.gate_noise);
    b.touch(pairs);
    b.tick();
  } else {
    // R_ZZZ = CX(b->c) R_ZZ(a, c) CX(b->c).
    std::vector<std::size_t> cx, zz;
    for (auto& g : out.groups) {
      cx.insert(cx.end(), {g[1], g[2]});
      zz.insert(zz.end(), {g[0], g[2]});
    }
    b.cx(cx);
    b.tick();
    if (noisy_gate) c.pauli_channel_2(zz, spec.gate_noise);
    b.touch(zz);
    b.tick();
    b.cx(cx);
    b.tick();
  }
  for (std::size_t r = 0; r < spec.qed_rounds; ++r) {
    auto cur = append_se_round(b, L, {}, {}, spec.hadamard_basis);
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (in_region(j)) c.add_detector({prev[j], cur[j]}, true, "round");
    prev = cur;
  }
  out.circuit = std::move(c);
  return out;
}

}  // namespace rotft

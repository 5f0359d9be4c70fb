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

#include "rotft/tableau.h"

#include <bit>
#include <stdexcept>

namespace rotft {

namespace {

// i-exponent of (x1,z1)*(x2,z2) summed over a word.
int word_phase(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
  std::uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
  std::uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
  std::uint64_t plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2);
  std::uint64_t minus = (X1 & Z2) | (Y1 & X2) | (Z1 & Y2);
  return std::popcount(plus) - std::popcount(minus);
}

inline bool bit(const std::uint64_t* w, std::size_t q) { return (w[q >> 6] >> (q & 63)) & 1; }
inline void flip(std::uint64_t* w, std::size_t q) { w[q >> 6] ^= std::uint64_t{1} << (q & 63); }

}  // namespace

Tableau::Tableau(std::size_t n)
    : n_(n), w_((n + 63) / 64), x_(2 * n * w_, 0), z_(2 * n * w_, 0), r_(2 * n, 0) {
  for (std::size_t i = 0; i < n; ++i) {
    flip(xr(i), i);
    flip(zr(i + n), i);
  }
}

void Tableau::h(std::size_t a) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool x = bit(xr(r), a), z = bit(zr(r), a);
    if (x && z) r_[r] = (r_[r] + 2) & 3;
    if (x != z) {
      flip(xr(r), a);
      flip(zr(r), a);
    }
  }
}

void Tableau::s(std::size_t a) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool x = bit(xr(r), a), z = bit(zr(r), a);
    if (x && z) r_[r] = (r_[r] + 2) & 3;
    if (x) flip(zr(r), a);
  }
}

void Tableau::s_dag(std::size_t a) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool x = bit(xr(r), a), z = bit(zr(r), a);
    if (x && !z) r_[r] = (r_[r] + 2) & 3;
    if (x) flip(zr(r), a);
  }
}

void Tableau::cx(std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool xa = bit(xr(r), a), za = bit(zr(r), a), xb = bit(xr(r), b), zb = bit(zr(r), b);
    if (xa && zb && (xb == za)) r_[r] = (r_[r] + 2) & 3;
    if (xa) flip(xr(r), b);
    if (zb) flip(zr(r), a);
  }
}

void Tableau::cz(std::size_t a, std::size_t b) {
  h(b);
  cx(a, b);
  h(b);
}

void Tableau::sqrt_zz(std::size_t a, std::size_t b) {
  cz(a, b);
  s_dag(a);
  s_dag(b);
}

bool Tableau::anticommutes(std::size_t r, const PauliOperator& p) const {
  const auto& px = p.xs();
  const auto& pz = p.zs();
  int c = 0;
  for (std::size_t w = 0; w < w_; ++w)
    c += std::popcount((xr(r)[w] & pz[w]) ^ (zr(r)[w] & px[w]));
  return c & 1;
}

void Tableau::apply_pauli(const PauliOperator& p) {
  for (std::size_t r = 0; r < 2 * n_; ++r)
    if (anticommutes(r, p)) r_[r] = (r_[r] + 2) & 3;
}

void Tableau::rowsum(std::size_t h, std::size_t i) {
  int ph = r_[h] + r_[i];
  for (std::size_t w = 0; w < w_; ++w) {
    ph += word_phase(xr(i)[w], zr(i)[w], xr(h)[w], zr(h)[w]);
    xr(h)[w] ^= xr(i)[w];
    zr(h)[w] ^= zr(i)[w];
  }
  r_[h] = static_cast<std::uint8_t>(((ph % 4) + 4) % 4);
}

int Tableau::peek(const PauliOperator& p) const {
  for (std::size_t r = n_; r < 2 * n_; ++r)
    if (anticommutes(r, p)) return 0;
  // Accumulate the product of stabilizers whose destabilizer anticommutes.
  std::vector<std::uint64_t> sx(w_, 0), sz(w_, 0);
  int ph = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!anticommutes(i, p)) continue;
    std::size_t r = i + n_;
    ph += r_[r];
    for (std::size_t w = 0; w < w_; ++w) {
      ph += word_phase(sx[w], sz[w], xr(r)[w], zr(r)[w]);
      sx[w] ^= xr(r)[w];
      sz[w] ^= zr(r)[w];
    }
  }
  ph = ((ph - p.phase()) % 4 + 4) % 4;
  if (ph & 1) throw std::logic_error("tableau peek: inconsistent phase");
  return ph == 0 ? 1 : -1;
}

bool Tableau::measure(const PauliOperator& p, Rng* rng, bool* was_random) {
  if (p.n_qubits() != n_) throw std::invalid_argument("measure: Pauli size mismatch");
  std::size_t piv = 2 * n_;
  for (std::size_t r = n_; r < 2 * n_; ++r)
    if (anticommutes(r, p)) {
      piv = r;
      break;
    }
  if (piv == 2 * n_) {
    if (was_random) *was_random = false;
    return peek(p) < 0;
  }
  for (std::size_t r = 0; r < 2 * n_; ++r)
    if (r != piv && anticommutes(r, p)) rowsum(r, piv);
  std::size_t d = piv - n_;
  std::copy(xr(piv), xr(piv) + w_, xr(d));
  std::copy(zr(piv), zr(piv) + w_, zr(d));
  r_[d] = r_[piv];
  bool out = rng ? ((*rng)() >> 63) : false;
  std::copy(p.xs().begin(), p.xs().end(), xr(piv));
  std::copy(p.zs().begin(), p.zs().end(), zr(piv));
  r_[piv] = static_cast<std::uint8_t>((p.phase() + (out ? 2 : 0)) & 3);
  if (was_random) *was_random = true;
  return out;
}

void Tableau::reset(std::size_t a, Rng* rng) {
  if (measure(PauliOperator::single(n_, a, 'Z'), rng)) apply_pauli(PauliOperator::single(n_, a, 'X'));
}

void Tableau::reset_x(std::size_t a, Rng* rng) {
  if (measure(PauliOperator::single(n_, a, 'X'), rng)) apply_pauli(PauliOperator::single(n_, a, 'Z'));
}

PauliOperator Tableau::stabilizer(std::size_t i) const {
  PauliOperator p(n_);
  for (std::size_t q = 0; q < n_; ++q) p.set(q, bit(xr(i + n_), q), bit(zr(i + n_), q));
  p.set_phase(r_[i + n_]);
  return p;
}

namespace {

char sample_pauli_1(const Op& o, Rng& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  double x = u(rng);
  switch (o.type) {
    case OpType::kXError:
      return x < o.args[0] ? 'X' : 'I';
    case OpType::kZError:
      return x < o.args[0] ? 'Z' : 'I';
    case OpType::kDepolarize1:
      if (x >= o.args[0]) return 'I';
      return "XYZ"[std::min(2, static_cast<int>(x / o.args[0] * 3))];
    case OpType::kPauliChannel1: {
      double acc = 0;
      for (int k = 0; k < 3; ++k) {
        acc += o.args[k];
        if (x < acc) return "XYZ"[k];
      }
      return 'I';
    }
    default:
      throw std::logic_error("not a one-qubit noise op");
  }
}

int sample_pauli_2(const Op& o, Rng& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  double x = u(rng);
  if (o.type == OpType::kDepolarize2) {
    if (x >= o.args[0]) return 0;
    return 1 + std::min(14, static_cast<int>(x / o.args[0] * 15));
  }
  double acc = 0;
  for (int k = 0; k < 15; ++k) {
    acc += o.args[k];
    if (x < acc) return k + 1;
  }
  return 0;
}

}  // namespace

std::vector<std::uint8_t> run_tableau(const NoisyCircuit& c, Rng* rng, bool noisy) {
  std::size_t n = c.n_qubits();
  Tableau t(n);
  std::vector<std::uint8_t> rec;
  rec.reserve(c.num_measurements());
  auto p2 = all_paulis(2);
  for (auto& o : c.ops()) {
    const auto& q = o.targets;
    switch (o.type) {
      case OpType::kReset:
        for (auto a : q) t.reset(a, rng);
        break;
      case OpType::kResetX:
        for (auto a : q) t.reset_x(a, rng);
        break;
      case OpType::kH:
        for (auto a : q) t.h(a);
        break;
      case OpType::kS:
        for (auto a : q) t.s(a);
        break;
      case OpType::kSDag:
        for (auto a : q) t.s_dag(a);
        break;
      case OpType::kSqrtZZ:
        for (std::size_t i = 0; i < q.size(); i += 2) t.sqrt_zz(q[i], q[i + 1]);
        break;
      case OpType::kCX:
        for (std::size_t i = 0; i < q.size(); i += 2) t.cx(q[i], q[i + 1]);
        break;
      case OpType::kCZ:
        for (std::size_t i = 0; i < q.size(); i += 2) t.cz(q[i], q[i + 1]);
        break;
      case OpType::kMeasure:
        for (auto a : q) rec.push_back(t.measure(PauliOperator::single(n, a, 'Z'), rng));
        break;
      case OpType::kMeasureX:
        for (auto a : q) rec.push_back(t.measure(PauliOperator::single(n, a, 'X'), rng));
        break;
      case OpType::kMpp:
        for (auto& p : o.paulis) rec.push_back(t.measure(p, rng));
        break;
      case OpType::kPauli:
        t.apply_pauli(o.paulis[0]);
        break;
      case OpType::kXError:
      case OpType::kZError:
      case OpType::kDepolarize1:
      case OpType::kPauliChannel1:
        if (!noisy) break;
        for (auto a : q) {
          char l = sample_pauli_1(o, *rng);
          if (l != 'I') t.apply_pauli(PauliOperator::single(n, a, l));
        }
        break;
      case OpType::kDepolarize2:
      case OpType::kPauliChannel2:
        if (!noisy) break;
        for (std::size_t i = 0; i < q.size(); i += 2) {
          int k = sample_pauli_2(o, *rng);
          if (k) t.apply_pauli(p2[k].embed(n, {q[i], q[i + 1]}));
        }
        break;
      case OpType::kKraus:
        if (noisy) throw std::invalid_argument("tableau simulation cannot apply Kraus ops");
        break;
      case OpType::kSlot:
      case OpType::kTick:
        break;
    }
  }
  return rec;
}

std::vector<std::uint8_t> reference_record(const NoisyCircuit& c) {
  return run_tableau(c, nullptr, false);
}

}  // namespace rotft

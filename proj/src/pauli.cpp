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

#include "rotft/pauli.h"

#include <bit>
#include <stdexcept>

namespace rotft {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

}  // namespace

PauliOperator::PauliOperator(std::size_t n)
    : n_(n), xs_(words_for(n), 0), zs_(words_for(n), 0) {}

PauliOperator PauliOperator::from_string(std::string_view s) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < s.size() && s[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  PauliOperator p(s.size() - pos);
  for (std::size_t q = 0; pos + q < s.size(); ++q) p.set(q, s[pos + q]);
  p.set_phase(phase);
  return p;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, char c) {
  if (q >= n) throw std::out_of_range("qubit index out of range");
  PauliOperator p(n);
  p.set(q, c);
  return p;
}

PauliOperator PauliOperator::on(std::size_t n,
                                const std::vector<std::size_t>& qubits,
                                char c) {
  PauliOperator p(n);
  for (auto q : qubits) {
    if (q >= n) throw std::out_of_range("qubit index out of range");
    p.set(q, c);
  }
  return p;
}

void PauliOperator::set(std::size_t q, bool x, bool z) {
  std::uint64_t m = std::uint64_t{1} << (q & 63);
  if (x) xs_[q >> 6] |= m; else xs_[q >> 6] &= ~m;
  if (z) zs_[q >> 6] |= m; else zs_[q >> 6] &= ~m;
}

void PauliOperator::set(std::size_t q, char c) {
  switch (c) {
    case 'I': case '_': set(q, false, false); break;
    case 'X': set(q, true, false); break;
    case 'Y': set(q, true, true); break;
    case 'Z': set(q, false, true); break;
    default: throw std::invalid_argument(std::string("bad Pauli letter: ") + c);
  }
}

char PauliOperator::at(std::size_t q) const {
  static const char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[x(q) | (z(q) << 1)];
}

std::size_t PauliOperator::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) w += std::popcount(xs_[i] | zs_[i]);
  return w;
}

std::vector<std::size_t> PauliOperator::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_; ++q)
    if (x(q) || z(q)) out.push_back(q);
  return out;
}

bool PauliOperator::is_identity() const {
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (xs_[i] | zs_[i]) return false;
  return true;
}

bool PauliOperator::commutes(const PauliOperator& o) const {
  if (o.n_ != n_) throw std::invalid_argument("qubit count mismatch");
  int par = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i)
    par ^= std::popcount((xs_[i] & o.zs_[i]) ^ (zs_[i] & o.xs_[i])) & 1;
  return par == 0;
}

int product_phase(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("qubit count mismatch");
  int acc = 0;
  for (std::size_t i = 0; i < a.n_words(); ++i) {
    std::uint64_t x1 = a.xs()[i], z1 = a.zs()[i], x2 = b.xs()[i], z2 = b.zs()[i];
    std::uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
    std::uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
    // XY=iZ, YZ=iX, ZX=iY and the reversed orders give -i.
    std::uint64_t plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2);
    std::uint64_t minus = (Y1 & X2) | (Z1 & Y2) | (X1 & Z2);
    acc += std::popcount(plus) - std::popcount(minus);
  }
  return ((acc % 4) + 4) % 4;
}

PauliOperator PauliOperator::operator*(const PauliOperator& o) const {
  PauliOperator r = *this;
  r *= o;
  return r;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& o) {
  int ph = product_phase(*this, o);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    xs_[i] ^= o.xs_[i];
    zs_[i] ^= o.zs_[i];
  }
  set_phase(phase_ + o.phase_ + ph);
  return *this;
}

PauliOperator PauliOperator::operator-() const {
  PauliOperator r = *this;
  r.set_phase(phase_ + 2);
  return r;
}

bool PauliOperator::same_letters(const PauliOperator& o) const {
  return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_;
}

bool PauliOperator::operator==(const PauliOperator& o) const {
  return same_letters(o) && phase_ == o.phase_;
}

bool PauliOperator::canonical_less(const PauliOperator& a, const PauliOperator& b) {
  std::size_t wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  auto sa = a.support(), sb = b.support();
  if (sa != sb) return sa < sb;
  static const int kRank[4] = {0, 1, 3, 2};  // I X Z Y -> I<X<Y<Z
  for (auto q : sa) {
    int ra = kRank[a.x(q) | (a.z(q) << 1)], rb = kRank[b.x(q) | (b.z(q) << 1)];
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::string PauliOperator::letters() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = at(q);
  return s;
}

std::string PauliOperator::str() const {
  static const char* kSign[4] = {"+", "+i", "-", "-i"};
  return kSign[phase_] + letters();
}

PauliOperator PauliOperator::restrict_to(const std::vector<std::size_t>& qubits) const {
  PauliOperator r(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) r.set(i, x(qubits[i]), z(qubits[i]));
  r.set_phase(phase_);
  return r;
}

PauliOperator PauliOperator::embed(std::size_t n, const std::vector<std::size_t>& qubits) const {
  if (qubits.size() != n_) throw std::invalid_argument("embed: size mismatch");
  PauliOperator r(n);
  for (std::size_t i = 0; i < n_; ++i) {
    if (qubits[i] >= n) throw std::out_of_range("embed: qubit out of range");
    r.set(qubits[i], x(i), z(i));
  }
  r.set_phase(phase_);
  return r;
}

std::vector<PauliOperator> all_paulis(std::size_t n) {
  if (n > 12) throw std::invalid_argument("all_paulis: too many qubits");
  std::size_t total = std::size_t{1} << (2 * n);
  std::vector<PauliOperator> out;
  out.reserve(total);
  static const char kOrder[4] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t idx = 0; idx < total; ++idx) {
    PauliOperator p(n);
    std::size_t v = idx;
    for (std::size_t q = 0; q < n; ++q, v >>= 2) p.set(q, kOrder[v & 3]);
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t pauli_index(const PauliOperator& p) {
  std::size_t idx = 0;
  for (std::size_t q = p.n_qubits(); q-- > 0;) {
    int d = 0;
    if (p.x(q) && p.z(q)) d = 2;
    else if (p.x(q)) d = 1;
    else if (p.z(q)) d = 3;
    idx = idx * 4 + d;
  }
  return idx;
}

}  // namespace rotft

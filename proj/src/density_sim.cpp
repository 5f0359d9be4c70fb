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

#include "rotft/density_sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rotft/tableau.h"

namespace rotft {

namespace {

using Index = Eigen::Index;

std::vector<Index> spread_table(const std::vector<std::size_t>& qubits, std::size_t n) {
  std::size_t k = qubits.size();
  std::vector<Index> t(std::size_t{1} << k, 0);
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t j = 0; j < k; ++j)
      if ((a >> (k - 1 - j)) & 1) t[a] |= Index{1} << (n - 1 - qubits[j]);
  return t;
}

Mat left_local(const Mat& rho, const Mat& u, const std::vector<std::size_t>& qubits, std::size_t n) {
  Index D = rho.rows();
  auto sp = spread_table(qubits, n);
  Index mask = sp.back();
  Index K = static_cast<Index>(sp.size());
  Mat out(D, D);
  std::vector<cplx> v(K);
  for (Index base = 0; base < D; ++base) {
    if (base & mask) continue;
    for (Index c = 0; c < D; ++c) {
      for (Index b = 0; b < K; ++b) v[b] = rho(base | sp[b], c);
      for (Index a = 0; a < K; ++a) {
        cplx s = 0;
        for (Index b = 0; b < K; ++b) s += u(a, b) * v[b];
        out(base | sp[a], c) = s;
      }
    }
  }
  return out;
}

Mat right_local_adj(const Mat& rho, const Mat& u, const std::vector<std::size_t>& qubits,
                    std::size_t n) {
  // rho * u^dag
  Index D = rho.rows();
  auto sp = spread_table(qubits, n);
  Index mask = sp.back();
  Index K = static_cast<Index>(sp.size());
  Mat out(D, D);
  std::vector<cplx> v(K);
  for (Index base = 0; base < D; ++base) {
    if (base & mask) continue;
    for (Index r = 0; r < D; ++r) {
      for (Index b = 0; b < K; ++b) v[b] = rho(r, base | sp[b]);
      for (Index a = 0; a < K; ++a) {
        cplx s = 0;
        for (Index b = 0; b < K; ++b) s += v[b] * std::conj(u(a, b));
        out(r, base | sp[a]) = s;
      }
    }
  }
  return out;
}

// Full-register Pauli as |i> -> c(i) |i ^ x>.
struct PauliAction {
  Index x = 0, z = 0;
  cplx global = 1;
};

PauliAction pauli_action(const PauliOperator& p) {
  PauliAction a;
  std::size_t n = p.n_qubits();
  int ny = 0;
  for (std::size_t q = 0; q < n; ++q) {
    Index b = Index{1} << (n - 1 - q);
    if (p.x(q)) a.x |= b;
    if (p.z(q)) a.z |= b;
    if (p.x(q) && p.z(q)) ++ny;
  }
  static const cplx ipow[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
  a.global = ipow[(ny + p.phase()) % 4];
  return a;
}

inline cplx coeff(const PauliAction& a, Index i) {
  return (__builtin_popcountll(static_cast<unsigned long long>(i & a.z)) & 1) ? -a.global : a.global;
}

Mat pauli_left(const Mat& rho, const PauliAction& a) {
  Index D = rho.rows();
  Mat out(D, D);
  for (Index i = 0; i < D; ++i) out.row(i ^ a.x) = coeff(a, i) * rho.row(i);
  return out;
}

Mat pauli_right(const Mat& rho, const PauliAction& a) {
  Index D = rho.rows();
  Mat out(D, D);
  for (Index j = 0; j < D; ++j) out.col(j) = coeff(a, j) * rho.col(j ^ a.x);
  return out;
}

Mat conj_pauli(const Mat& rho, const PauliOperator& p) {
  auto a = pauli_action(p);
  return pauli_right(pauli_left(rho, a), a);
}

Mat project_bit(const Mat& rho, std::size_t q, std::size_t n, bool one) {
  Index D = rho.rows();
  Index b = Index{1} << (n - 1 - q);
  Mat out = rho;
  for (Index i = 0; i < D; ++i)
    if (static_cast<bool>(i & b) != one) {
      out.row(i).setZero();
      out.col(i).setZero();
    }
  return out;
}

Mat gate_matrix(OpType t) {
  Mat m;
  const cplx I(0, 1);
  switch (t) {
    case OpType::kH:
      m = Mat::Constant(2, 2, 1.0 / std::sqrt(2.0));
      m(1, 1) *= -1;
      return m;
    case OpType::kS:
      m = Mat::Identity(2, 2);
      m(1, 1) = I;
      return m;
    case OpType::kSDag:
      m = Mat::Identity(2, 2);
      m(1, 1) = -I;
      return m;
    case OpType::kCX:
      m = Mat::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    case OpType::kCZ:
      m = Mat::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    case OpType::kSqrtZZ: {
      m = Mat::Zero(4, 4);
      cplx e = std::exp(I * (std::numbers::pi / 4)), em = std::exp(-I * (std::numbers::pi / 4));
      m(0, 0) = e;
      m(1, 1) = em;
      m(2, 2) = em;
      m(3, 3) = e;
      return m;
    }
    default:
      throw std::logic_error("no gate matrix");
  }
}

}  // namespace

Mat apply_local_unitary(const Mat& rho, const Mat& u, const std::vector<std::size_t>& qubits,
                        std::size_t n) {
  return right_local_adj(left_local(rho, u, qubits, n), u, qubits, n);
}

Mat apply_local_kraus(const Mat& rho, const std::vector<Mat>& ks,
                      const std::vector<std::size_t>& qubits, std::size_t n) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (auto& k : ks) out += apply_local_unitary(rho, k, qubits, n);
  return out;
}

Mat reduce_to_qubits(const Mat& rho, std::size_t n, const std::vector<std::size_t>& keep) {
  Mat cur = rho;
  std::vector<int> dims(n, 2);
  std::vector<std::size_t> present(n);
  for (std::size_t i = 0; i < n; ++i) present[i] = i;
  for (std::size_t q = n; q-- > 0;) {
    if (std::find(keep.begin(), keep.end(), q) != keep.end()) continue;
    cur = partial_trace(cur, dims, static_cast<int>(q));
    dims.erase(dims.begin() + static_cast<long>(q));
  }
  return cur;
}

DensitySimulator::DensitySimulator(const NoisyCircuit& c) : c_(c) {
  auto rec = reference_record(c.without_noise());
  for (auto& d : c.detectors()) {
    std::uint8_t v = 0;
    for (auto m : d.meas) v ^= rec[m];
    ref_.push_back(v);
  }
  for (auto& d : c.observables()) {
    std::uint8_t v = 0;
    for (auto m : d.meas) v ^= rec[m];
    ref_.push_back(v);
  }
}

DensitySimulator::DensitySimulator(const NoisyCircuit& c, Key reference)
    : c_(c), ref_(std::move(reference)) {}

void DensitySimulator::run() {
  std::size_t n = c_.n_qubits();
  if (n > 10) throw std::invalid_argument("density simulation limited to 10 qubits");
  c_.validate();
  std::size_t nd = c_.detectors().size(), no = c_.observables().size();
  std::vector<std::vector<std::size_t>> touches(c_.num_measurements());
  for (std::size_t d = 0; d < nd; ++d)
    for (auto m : c_.detectors()[d].meas) touches[m].push_back(d);
  for (std::size_t o = 0; o < no; ++o)
    for (auto m : c_.observables()[o].meas) touches[m].push_back(nd + o);

  Index D = Index{1} << n;
  Mat rho0 = Mat::Zero(D, D);
  rho0(0, 0) = 1;
  branches_.clear();
  branches_[Key(nd + no, 0)] = rho0;
  std::size_t mi = 0;
  auto all = [&](auto&& f) {
    for (auto& [k, r] : branches_) r = f(r);
  };
  auto pauli_mix = [&](const Mat& r, const std::vector<std::pair<double, PauliOperator>>& terms,
                       double p_id) {
    Mat out = p_id * r;
    for (auto& [p, op] : terms)
      if (p > 0) out += p * conj_pauli(r, op);
    return out;
  };
  auto measure_branch = [&](auto&& proj) {
    std::map<Key, Mat> next;
    for (auto& [k, r] : branches_)
      for (int b = 0; b < 2; ++b) {
        Mat pr = proj(r, b);
        if (std::abs(pr.trace()) < 1e-15 && pr.cwiseAbs().maxCoeff() < 1e-15) continue;
        Key nk = k;
        if (b)
          for (auto t : touches[mi]) nk[t] ^= 1;
        auto it = next.find(nk);
        if (it == next.end()) next.emplace(nk, pr);
        else it->second += pr;
      }
    branches_ = std::move(next);
    ++mi;
  };
  auto p2 = all_paulis(2);
  for (auto& o : c_.ops()) {
    const auto& t = o.targets;
    switch (o.type) {
      case OpType::kReset:
      case OpType::kResetX:
        for (auto q : t) {
          PauliOperator xq = PauliOperator::single(n, q, 'X');
          all([&](const Mat& r) {
            Mat w = o.type == OpType::kResetX ? apply_local_unitary(r, gate_matrix(OpType::kH), {q}, n) : r;
            Mat out = project_bit(w, q, n, false) + conj_pauli(project_bit(w, q, n, true), xq);
            return o.type == OpType::kResetX ? apply_local_unitary(out, gate_matrix(OpType::kH), {q}, n) : out;
          });
        }
        break;
      case OpType::kH:
      case OpType::kS:
      case OpType::kSDag: {
        Mat g = gate_matrix(o.type);
        for (auto q : t) all([&](const Mat& r) { return apply_local_unitary(r, g, {q}, n); });
        break;
      }
      case OpType::kCX:
      case OpType::kCZ:
      case OpType::kSqrtZZ: {
        Mat g = gate_matrix(o.type);
        for (std::size_t i = 0; i < t.size(); i += 2)
          all([&](const Mat& r) { return apply_local_unitary(r, g, {t[i], t[i + 1]}, n); });
        break;
      }
      case OpType::kMeasure:
        for (auto q : t) measure_branch([&](const Mat& r, int b) { return project_bit(r, q, n, b); });
        break;
      case OpType::kMeasureX:
        for (auto q : t) {
          Mat hm = gate_matrix(OpType::kH);
          measure_branch([&](const Mat& r, int b) {
            Mat w = apply_local_unitary(r, hm, {q}, n);
            return apply_local_unitary(project_bit(w, q, n, b), hm, {q}, n);
          });
        }
        break;
      case OpType::kMpp:
        for (auto& p : o.paulis) {
          auto a = pauli_action(p);
          measure_branch([&](const Mat& r, int b) {
            Mat pr = pauli_left(r, a), rp = pauli_right(r, a), prp = pauli_right(pr, a);
            double s = b ? -1.0 : 1.0;
            return Mat(0.25 * (r + s * pr + s * rp + prp));
          });
        }
        break;
      case OpType::kPauli:
        all([&](const Mat& r) { return conj_pauli(r, o.paulis[0]); });
        break;
      case OpType::kXError:
      case OpType::kZError:
      case OpType::kDepolarize1:
      case OpType::kPauliChannel1:
        for (auto q : t) {
          std::vector<std::pair<double, PauliOperator>> terms;
          double px = 0, py = 0, pz = 0;
          if (o.type == OpType::kXError) px = o.args[0];
          else if (o.type == OpType::kZError) pz = o.args[0];
          else if (o.type == OpType::kDepolarize1) px = py = pz = o.args[0] / 3;
          else {
            px = o.args[0];
            py = o.args[1];
            pz = o.args[2];
          }
          terms.emplace_back(px, PauliOperator::single(n, q, 'X'));
          terms.emplace_back(py, PauliOperator::single(n, q, 'Y'));
          terms.emplace_back(pz, PauliOperator::single(n, q, 'Z'));
          all([&](const Mat& r) { return pauli_mix(r, terms, 1 - px - py - pz); });
        }
        break;
      case OpType::kDepolarize2:
      case OpType::kPauliChannel2:
        for (std::size_t i = 0; i < t.size(); i += 2) {
          std::vector<std::pair<double, PauliOperator>> terms;
          double tot = 0;
          for (std::size_t k = 1; k < 16; ++k) {
            double p = o.type == OpType::kDepolarize2 ? o.args[0] / 15 : o.args[k - 1];
            tot += p;
            terms.emplace_back(p, p2[k].embed(n, {t[i], t[i + 1]}));
          }
          all([&](const Mat& r) { return pauli_mix(r, terms, 1 - tot); });
        }
        break;
      case OpType::kKraus:
        all([&](const Mat& r) { return apply_local_kraus(r, o.kraus, t, n); });
        break;
      case OpType::kSlot:
      case OpType::kTick:
        break;
    }
  }
}

bool DensitySimulator::passes(const Key& k) const {
  for (std::size_t d = 0; d < c_.detectors().size(); ++d)
    if (c_.detectors()[d].postselect && k[d] != ref_[d]) return false;
  return true;
}

std::map<DensitySimulator::Key, double> DensitySimulator::distribution() const {
  std::map<Key, double> out;
  for (auto& [k, r] : branches_) {
    Key f = k;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] ^= ref_[i];
    out[f] += r.trace().real();
  }
  return out;
}

double DensitySimulator::pass_probability() const {
  double s = 0;
  for (auto& [k, r] : branches_)
    if (passes(k)) s += r.trace().real();
  return s;
}

Mat DensitySimulator::passing_state() const {
  Index D = Index{1} << c_.n_qubits();
  Mat out = Mat::Zero(D, D);
  for (auto& [k, r] : branches_)
    if (passes(k)) out += r;
  return out;
}

double DensitySimulator::observable_flip_given_pass(std::size_t o) const {
  std::size_t idx = c_.detectors().size() + o;
  double pass = 0, flip = 0;
  for (auto& [k, r] : branches_) {
    if (!passes(k)) continue;
    double tr = r.trace().real();
    pass += tr;
    if (k[idx] != ref_[idx]) flip += tr;
  }
  return pass > 0 ? flip / pass : 0.0;
}

}  // namespace rotft

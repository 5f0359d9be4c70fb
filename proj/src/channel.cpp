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

#include "rotft/channel.h"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rotft {

PauliChannel PauliChannel::identity(std::size_t n) {
  PauliChannel c;
  c.n_qubits = n;
  c.probs.assign(std::size_t{1} << (2 * n), 0.0);
  c.probs[0] = 1.0;
  return c;
}

PauliChannel PauliChannel::from_entries(
    std::size_t n, const std::vector<std::pair<std::string, double>>& e) {
  PauliChannel c;
  c.n_qubits = n;
  c.probs.assign(std::size_t{1} << (2 * n), 0.0);
  for (auto& [s, p] : e) {
    auto op = PauliOperator::from_string(s);
    if (op.n_qubits() != n) throw std::invalid_argument("Pauli length mismatch: " + s);
    c.probs[pauli_index(op)] += p;
  }
  c.validate();
  return c;
}

double PauliChannel::prob(const std::string& letters) const {
  return prob(PauliOperator::from_string(letters));
}

void PauliChannel::validate(double tol) const {
  if (probs.size() != (std::size_t{1} << (2 * n_qubits)))
    throw std::invalid_argument("Pauli channel size mismatch");
  double s = 0;
  for (double p : probs) {
    if (p < 0) throw std::invalid_argument("negative Pauli probability");
    s += p;
  }
  if (std::abs(s - 1.0) > tol) throw std::invalid_argument("Pauli probabilities do not sum to 1");
}

PauliChannel PauliChannel::compose(const PauliChannel& o) const {
  if (o.n_qubits != n_qubits) throw std::invalid_argument("compose: size mismatch");
  auto ps = all_paulis(n_qubits);
  PauliChannel out;
  out.n_qubits = n_qubits;
  out.probs.assign(probs.size(), 0.0);
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] == 0) continue;
    for (std::size_t b = 0; b < probs.size(); ++b) {
      if (o.probs[b] == 0) continue;
      out.probs[pauli_index(ps[a] * ps[b])] += probs[a] * o.probs[b];
    }
  }
  return out;
}

Mat PauliChannel::superop() const {
  auto ps = all_paulis(n_qubits);
  int d = 1 << n_qubits;
  Mat s = Mat::Zero(d * d, d * d);
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (probs[i] != 0) s += probs[i] * superop_unitary(pauli_matrix(ps[i]));
  return s;
}

std::vector<std::pair<std::string, double>> PauliChannel::entries() const {
  auto ps = all_paulis(n_qubits);
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < ps.size(); ++i) out.emplace_back(ps[i].letters(), probs[i]);
  return out;
}

PauliChannel depolarizing(std::size_t n, double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("depolarizing rate out of range");
  if (n != 1 && n != 2) throw std::invalid_argument("depolarizing supports n = 1, 2");
  PauliChannel c = PauliChannel::identity(n);
  double each = p / static_cast<double>(c.probs.size() - 1);
  for (std::size_t i = 1; i < c.probs.size(); ++i) c.probs[i] = each;
  c.probs[0] = 1.0 - p;
  return c;
}

PauliChannel pauli_twirl(const Mat& superop, int n, double clamp) {
  auto ps = all_paulis(n);
  Eigen::MatrixXd r = pauli_transfer_matrix(superop, n);
  PauliChannel c;
  c.n_qubits = n;
  c.probs.assign(ps.size(), 0.0);
  double norm = 1.0 / static_cast<double>(ps.size());
  for (std::size_t q = 0; q < ps.size(); ++q) {
    double acc = 0;
    for (std::size_t p = 0; p < ps.size(); ++p)
      acc += (ps[p].commutes(ps[q]) ? 1.0 : -1.0) * r(p, p);
    c.probs[q] = acc * norm;
  }
  double total = 0;
  for (auto& p : c.probs) {
    if (p < -clamp)
      throw std::runtime_error("twirled probability " + std::to_string(p) +
                               " below clamp tolerance");
    if (p < 0) p = 0;
    total += p;
  }
  for (auto& p : c.probs) p /= total;
  return c;
}

Mat rzz_unitary(double phi) {
  Mat zz = kron(pauli_1q('Z'), pauli_1q('Z'));
  return expm_hermitian(-zz, phi);
}

namespace {

ExtractedGateChannel finish(ExtractedGateChannel c, FactorSide side) {
  Mat uinv = superop_unitary(rzz_unitary(c.phi).adjoint());
  c.error_superop = side == FactorSide::kErrorAfter ? Mat(c.process * uinv) : Mat(uinv * c.process);
  c.kraus = kraus_from_superop(c.error_superop, 4);
  c.pauli_twirled = pauli_twirl(c.error_superop, 2);
  return c;
}

}  // namespace

ExtractedGateChannel extract_channel(const LindbladModel& model, bool postselect,
                                     FactorSide side) {
  if (model.data.size() != 2) throw std::invalid_argument("extract_channel needs the 2-qubit model");
  ExtractedGateChannel c;
  c.kind = model.kind;
  c.phi = model.phi;
  c.gamma = model.jumps.empty() ? 0.0 : model.jumps[0].rate;
  Mat s = full_propagator(model);
  Mat proc = Mat::Zero(16, 16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Mat e = Mat::Zero(4, 4);
      e(a, b) = 1;
      Mat in = model.ancilla >= 0 ? attach_subsystem(e, model.dims, model.ancilla, 0) : e;
      Mat out = apply_superop(s, in);
      Mat data;
      if (model.ancilla < 0) data = out;
      else if (postselect) data = project_subsystem(out, model.dims, model.ancilla, 0);
      else data = partial_trace(out, model.dims, model.ancilla);
      proc.col(b * 4 + a) = vec(data);
    }
  Mat mixed = apply_superop(proc, Mat::Identity(4, 4) / 4.0);
  c.postselect_prob = mixed.trace().real();
  if (c.postselect_prob <= 0) throw std::runtime_error("zero post-selection probability");
  c.process = proc / c.postselect_prob;
  return finish(std::move(c), side);
}

ExtractedGateChannel naive_circuit_channel(double phi, double p) {
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  Mat rz = expm_hermitian(-pauli_1q('Z'), phi);  // exp(i phi Z)
  Mat dep2 = depolarizing(2, p).superop();
  Mat rz_full = kron(Mat::Identity(2, 2), rz);
  // Depolarizing on the rotated qubit only.
  Mat dep1_full = Mat::Zero(16, 16);
  auto d1 = depolarizing(1, p);
  auto p1 = all_paulis(1);
  for (std::size_t i = 0; i < 4; ++i)
    dep1_full += d1.probs[i] * superop_unitary(kron(Mat::Identity(2, 2), pauli_matrix(p1[i])));
  Mat s_cnot = superop_unitary(cnot);
  Mat proc = dep2 * s_cnot * dep1_full * superop_unitary(rz_full) * dep2 * s_cnot;
  ExtractedGateChannel c;
  c.kind = GateKind::kNaive;
  c.phi = phi;
  c.gamma = 0;
  c.process = proc;
  c.postselect_prob = 1.0;
  return finish(std::move(c), FactorSide::kErrorAfter);
}

ExtractedGateChannel gate_channel(GateKind kind, double phi, double p, double gamma_per_p,
                                  const GateParams& base) {
  if (kind == GateKind::kNaive) return naive_circuit_channel(phi, p);
  GateParams gp = base;
  gp.gamma = gamma_per_p * p;
  return extract_channel(gate_model(kind, phi, gp, false), true);
}

double entanglement_fidelity(const Mat& superop, int dim) {
  return superop.trace().real() / (static_cast<double>(dim) * dim);
}

double average_fidelity(const Mat& superop, int dim) {
  return (dim * entanglement_fidelity(superop, dim) + 1.0) / (dim + 1.0);
}

RotationDistance diamond_distance_rotation(double q, double delta) {
  if (q < 0 || q > 1) throw std::invalid_argument("mixture weight out of range");
  RotationDistance r;
  double s = std::abs(std::sin(delta));
  r.diamond = q * s * std::sqrt(1.0 + s * s);
  r.trace_lower = q * s;
  r.avg_infidelity = 2.0 / 3.0 * q * s * s;
  return r;
}

double diamond_from_infidelity(double r, int n) { return (1.0 + std::ldexp(1.0, -n)) * r; }

nlohmann::json channel_to_json(const ExtractedGateChannel& c) {
  nlohmann::json j;
  j["kind"] = gate_kind_name(c.kind);
  j["phi"] = c.phi;
  j["gamma"] = c.gamma;
  j["postselect_prob"] = c.postselect_prob;
  j["n_qubits"] = c.pauli_twirled.n_qubits;
  j["paulis"] = nlohmann::json::array();
  for (auto& [s, p] : c.pauli_twirled.entries()) j["paulis"].push_back({s, p});
  return j;
}

PauliChannel pauli_channel_from_json(const nlohmann::json& j) {
  std::vector<std::pair<std::string, double>> e;
  for (auto& x : j.at("paulis")) e.emplace_back(x.at(0).get<std::string>(), x.at(1).get<double>());
  return PauliChannel::from_entries(j.at("n_qubits").get<std::size_t>(), e);
}

}  // namespace rotft

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

#ifndef ROTFT_CIRCUIT_H_
#define ROTFT_CIRCUIT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "rotft/channel.h"
#include "rotft/dense.h"
#include "rotft/pauli.h"

namespace rotft {

enum class OpType {
  kReset,      // |0>
  kResetX,     // |+>
  kH,
  kS,
  kSDag,
  kSqrtZZ,     // exp(i pi/4 Z(x)Z) on pairs
  kCX,         // pairs (control, target)
  kCZ,
  kMeasure,    // Z basis
  kMeasureX,
  kMpp,        // noiseless Pauli-product measurement, one per entry of `paulis`
  kPauli,      // deterministic Pauli string in `paulis[0]`
  kXError,
  kZError,
  kDepolarize1,
  kDepolarize2,
  kPauliChannel1,  // args = {px, py, pz}
  kPauliChannel2,  // args = 15 probabilities in all_paulis(2) order without I
  kKraus,          // dense simulation only; `kraus` acts on `targets`
  kSlot,           // hook point for per-shot Pauli insertion (frame sampler)
  kTick,
};

const char* op_name(OpType t);
bool is_noise(OpType t);
bool is_two_qubit(OpType t);

struct Op {
  OpType type = OpType::kTick;
  std::vector<std::size_t> targets;
  std::vector<double> args;
  std::vector<PauliOperator> paulis;
  std::vector<Mat> kraus;
  int slot = -1;
};

struct Detector {
  std::vector<std::size_t> meas;
  bool postselect = true;
  std::string tag;
};

struct Observable {
  std::vector<std::size_t> meas;
  std::string name;
};

class NoisyCircuit {
 public:
  NoisyCircuit() = default;
  explicit NoisyCircuit(std::size_t n) : n_(n) {}

  std::size_t n_qubits() const { return n_; }
  std::size_t num_measurements() const { return n_meas_; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::vector<Detector>& detectors() const { return detectors_; }
  const std::vector<Observable>& observables() const { return observables_; }

  void append(Op op);
  void reset(const std::vector<std::size_t>& q) { append({OpType::kReset, q}); }
  void reset_x(const std::vector<std::size_t>& q) { append({OpType::kResetX, q}); }
  void h(const std::vector<std::size_t>& q) { append({OpType::kH, q}); }
  void s(const std::vector<std::size_t>& q) { append({OpType::kS, q}); }
  void s_dag(const std::vector<std::size_t>& q) { append({OpType::kSDag, q}); }
  void sqrt_zz(const std::vector<std::size_t>& pairs) { append({OpType::kSqrtZZ, pairs}); }
  void cx(const std::vector<std::size_t>& pairs) { append({OpType::kCX, pairs}); }
  void cz(const std::vector<std::size_t>& pairs) { append({OpType::kCZ, pairs}); }
  // Each returns the record index of its first measurement.
  std::size_t measure(const std::vector<std::size_t>& q);
  std::size_t measure_x(const std::vector<std::size_t>& q);
  std::size_t mpp(const std::vector<PauliOperator>& ps);
  void pauli(const PauliOperator& p);
  void x_error(const std::vector<std::size_t>& q, double p);
  void z_error(const std::vector<std::size_t>& q, double p);
  void depolarize1(const std::vector<std::size_t>& q, double p);
  void depolarize2(const std::vector<std::size_t>& pairs, double p);
  void pauli_channel_1(const std::vector<std::size_t>& q, double px, double py, double pz);
  void pauli_channel_2(const std::vector<std::size_t>& pairs, const PauliChannel& ch);
  void kraus(const std::vector<std::size_t>& targets, const std::vector<Mat>& ks);
  void slot(int id) { Op o{OpType::kSlot}; o.slot = id; append(std::move(o)); }
  void tick() { append({OpType::kTick}); }

  std::size_t add_detector(std::vector<std::size_t> meas, bool postselect = true,
                           std::string tag = {});
  std::size_t add_observable(std::vector<std::size_t> meas, std::string name = {});

  // Structural checks: targets in range, pair ops distinct, measurement
  // references valid, probabilities in [0, 1]. Throws std::invalid_argument.
  void validate() const;
  bool has_dense_only_ops() const;
  std::size_t count(OpType t) const;  // number of gate applications
  // Number of TICK-separated layers containing at least one non-noise op.
  std::size_t depth() const;
  NoisyCircuit without_noise() const;
  // Forward propagation of a Pauli inserted after op
  // `after_op` through the remaining Clifford gates. Resets clear the reset
  // qubits; measurements and noise leave the Pauli unchanged.
  PauliOperator propagate(std::size_t after_op, PauliOperator p) const;

  // Line-oriented text form; see README for the grammar.
  std::string to_text() const;
  static NoisyCircuit from_text(const std::string& text);

 private:
  std::size_t n_ = 0;
  std::size_t n_meas_ = 0;
  std::vector<Op> ops_;
  std::vector<Detector> detectors_;
  std::vector<Observable> observables_;
};

// Helper that inserts circuit-level depolarizing noise of strength p: after
// resets, single-qubit gates and two-qubit gates; before measurements; and on
// idle active qubits at every tick.
class NoisyBuilder {
 public:
  NoisyBuilder(NoisyCircuit& c, double p, bool idle_noise = true)
      : c_(c), p_(p), idle_(idle_noise) {}
  NoisyCircuit& circuit() { return c_; }
  double p() const { return p_; }

  void set_active(const std::vector<std::size_t>& q);
  void activate(const std::vector<std::size_t>& q);
  void deactivate(const std::vector<std::size_t>& q);
  void reset(const std::vector<std::size_t>& q);
  void reset_x(const std::vector<std::size_t>& q);
  void h(const std::vector<std::size_t>& q);
  void cx(const std::vector<std::size_t>& pairs);
  // Marks qubits as busy this layer without noise (e.g. an injected gate channel).
  void touch(const std::vector<std::size_t>& q);
  std::size_t measure(const std::vector<std::size_t>& q);
  std::size_t measure_x(const std::vector<std::size_t>& q);
  // Ends a layer: idle noise on active qubits untouched since the last tick.
  void tick();
  // Ends a reset or single-qubit layer; idles only if fast-layer idling is on.
  void tick_fast();
  void set_fast_layer_idle(bool on) { fast_idle_ = on; }

 private:
  NoisyCircuit& c_;
  double p_;
  bool idle_;
  bool fast_idle_ = true;
  std::vector<bool> active_;
  std::vector<bool> touched_;
};

}  // namespace rotft

#endif  // ROTFT_CIRCUIT_H_

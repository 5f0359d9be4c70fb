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

#include "rotft/circuit.h"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rotft {

namespace {

struct NameEntry {
  OpType t;
  const char* name;
};

constexpr NameEntry kNames[] = {
    {OpType::kReset, "R"},           {OpType::kResetX, "RX"},
    {OpType::kH, "H"},               {OpType::kS, "S"},
    {OpType::kSDag, "S_DAG"},        {OpType::kSqrtZZ, "SQRT_ZZ"},
    {OpType::kCX, "CX"},             {OpType::kCZ, "CZ"},
    {OpType::kMeasure, "M"},         {OpType::kMeasureX, "MX"},
    {OpType::kMpp, "MPP"},           {OpType::kPauli, "PAULI"},
    {OpType::kXError, "X_ERROR"},    {OpType::kZError, "Z_ERROR"},
    {OpType::kDepolarize1, "DEPOLARIZE1"}, {OpType::kDepolarize2, "DEPOLARIZE2"},
    {OpType::kPauliChannel1, "PAULI_CHANNEL_1"}, {OpType::kPauliChannel2, "PAULI_CHANNEL_2"},
    {OpType::kKraus, "KRAUS"},       {OpType::kSlot, "SLOT"},
    {OpType::kTick, "TICK"},
};

OpType parse_op_name(const std::string& s) {
  for (auto& e : kNames)
    if (s == e.name) return e.t;
  throw std::invalid_argument("unknown circuit instruction: " + s);
}

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability out of range");
}

}  // namespace

const char* op_name(OpType t) {
  for (auto& e : kNames)
    if (e.t == t) return e.name;
  return "?";
}

bool is_noise(OpType t) {
  switch (t) {
    case OpType::kXError:
    case OpType::kZError:
    case OpType::kDepolarize1:
    case OpType::kDepolarize2:
    case OpType::kPauliChannel1:
    case OpType::kPauliChannel2:
    case OpType::kKraus:
      return true;
    default:
      return false;
  }
}

bool is_two_qubit(OpType t) {
  return t == OpType::kCX || t == OpType::kCZ || t == OpType::kSqrtZZ ||
         t == OpType::kDepolarize2 || t == OpType::kPauliChannel2;
}

void NoisyCircuit::append(Op op) {
  if (op.type == OpType::kMeasure || op.type == OpType::kMeasureX) n_meas_ += op.targets.size();
  if (op.type == OpType::kMpp) n_meas_ += op.paulis.size();
  ops_.push_back(std::move(op));
}

std::size_t NoisyCircuit::measure(const std::vector<std::size_t>& q) {
  std::size_t first = n_meas_;
  append({OpType::kMeasure, q});
  return first;
}

std::size_t NoisyCircuit::measure_x(const std::vector<std::size_t>& q) {
  std::size_t first = n_meas_;
  append({OpType::kMeasureX, q});
  return first;
}

std::size_t NoisyCircuit::mpp(const std::vector<PauliOperator>& ps) {
  std::size_t first = n_meas_;
  Op o{OpType::kMpp};
  o.paulis = ps;
  append(std::move(o));
  return first;
}

void NoisyCircuit::pauli(const PauliOperator& p) {
  Op o{OpType::kPauli};
  o.paulis = {p};
  append(std::move(o));
}

void NoisyCircuit::x_error(const std::vector<std::size_t>& q, double p) {
  if (p > 0) append({OpType::kXError, q, {p}});
}

void NoisyCircuit::z_error(const std::vector<std::size_t>& q, double p) {
  if (p > 0) append({OpType::kZError, q, {p}});
}

void NoisyCircuit::depolarize1(const std::vector<std::size_t>& q, double p) {
  if (p > 0 && !q.empty()) append({OpType::kDepolarize1, q, {p}});
}

void NoisyCircuit::depolarize2(const std::vector<std::size_t>& pairs, double p) {
  if (p > 0 && !pairs.empty()) append({OpType::kDepolarize2, pairs, {p}});
}

void NoisyCircuit::pauli_channel_1(const std::vector<std::size_t>& q, double px, double py,
                                   double pz) {
  if (px + py + pz > 0) append({OpType::kPauliChannel1, q, {px, py, pz}});
}

void NoisyCircuit::pauli_channel_2(const std::vector<std::size_t>& pairs, const PauliChannel& ch) {
  if (ch.n_qubits != 2) throw std::invalid_argument("pauli_channel_2 needs a 2-qubit channel");
  std::vector<double> a(ch.probs.begin() + 1, ch.probs.end());
  append({OpType::kPauliChannel2, pairs, a});
}

void NoisyCircuit::kraus(const std::vector<std::size_t>& targets, const std::vector<Mat>& ks) {
  Op o{OpType::kKraus, targets};
  o.kraus = ks;
  append(std::move(o));
}

std::size_t NoisyCircuit::add_detector(std::vector<std::size_t> meas, bool postselect,
                                       std::string tag) {
  for (auto m : meas)
    if (m >= n_meas_) throw std::invalid_argument("detector references a future measurement");
  detectors_.push_back({std::move(meas), postselect, std::move(tag)});
  return detectors_.size() - 1;
}

std::size_t NoisyCircuit::add_observable(std::vector<std::size_t> meas, std::string name) {
  for (auto m : meas)
    if (m >= n_meas_) throw std::invalid_argument("observable references a future measurement");
  observables_.push_back({std::move(meas), std::move(name)});
  return observables_.size() - 1;
}

void NoisyCircuit::validate() const {
  std::size_t nm = 0;
  for (auto& o : ops_) {
    for (auto q : o.targets)
      if (q >= n_) throw std::invalid_argument(std::string(op_name(o.type)) + ": qubit out of range");
    if (is_two_qubit(o.type)) {
      if (o.targets.size() % 2) throw std::invalid_argument("two-qubit op needs pairs");
      for (std::size_t i = 0; i < o.targets.size(); i += 2)
        if (o.targets[i] == o.targets[i + 1])
          throw std::invalid_argument("two-qubit op on a repeated qubit");
    }
    for (double a : o.args) check_prob(a);
    if (o.type == OpType::kPauliChannel1 || o.type == OpType::kPauliChannel2) {
      double s = 0;
      for (double a : o.args) s += a;
      if (s > 1.0 + 1e-12) throw std::invalid_argument("Pauli channel probabilities exceed 1");
      if (o.args.size() != (o.type == OpType::kPauliChannel1 ? 3u : 15u))
        throw std::invalid_argument("Pauli channel argument count");
    }
    if (o.type == OpType::kMpp || o.type == OpType::kPauli)
      for (auto& p : o.paulis) {
        if (p.n_qubits() != n_) throw std::invalid_argument("Pauli length mismatch");
        if (!p.is_hermitian()) throw std::invalid_argument("non-Hermitian Pauli");
      }
    if (o.type == OpType::kKraus) {
      std::size_t d = std::size_t{1} << o.targets.size();
      for (auto& k : o.kraus)
        if (static_cast<std::size_t>(k.rows()) != d || k.cols() != k.rows())
          throw std::invalid_argument("Kraus operator dimension mismatch");
    }
    if (o.type == OpType::kMeasure || o.type == OpType::kMeasureX) nm += o.targets.size();
    if (o.type == OpType::kMpp) nm += o.paulis.size();
  }
  if (nm != n_meas_) throw std::invalid_argument("measurement count mismatch");
  for (auto& d : detectors_)
    for (auto m : d.meas)
      if (m >= n_meas_) throw std::invalid_argument("detector index out of range");
  for (auto& d : observables_)
    for (auto m : d.meas)
      if (m >= n_meas_) throw std::invalid_argument("observable index out of range");
}

bool NoisyCircuit::has_dense_only_ops() const {
  return std::any_of(ops_.begin(), ops_.end(), [](const Op& o) { return o.type == OpType::kKraus; });
}

std::size_t NoisyCircuit::count(OpType t) const {
  std::size_t c = 0;
  for (auto& o : ops_) {
    if (o.type != t) continue;
    if (t == OpType::kMpp) c += o.paulis.size();
    else if (is_two_qubit(t)) c += o.targets.size() / 2;
    else if (t == OpType::kTick || t == OpType::kSlot || t == OpType::kPauli || t == OpType::kKraus) c += 1;
    else c += o.targets.size();
  }
  return c;
}

std::size_t NoisyCircuit::depth() const {
  std::size_t d = 0;
  bool any = false;
  for (auto& o : ops_) {
    if (o.type == OpType::kTick) {
      if (any) ++d;
      any = false;
    } else if (!is_noise(o.type) && o.type != OpType::kSlot) {
      any = true;
    }
  }
  return d + (any ? 1 : 0);
}

NoisyCircuit NoisyCircuit::without_noise() const {
  NoisyCircuit c(n_);
  for (auto& o : ops_)
    if (!is_noise(o.type)) c.append(o);
  c.detectors_ = detectors_;
  c.observables_ = observables_;
  return c;
}

PauliOperator NoisyCircuit::propagate(std::size_t after_op, PauliOperator p) const {
  auto get = [&](std::size_t q) { return std::pair<bool, bool>{p.x(q), p.z(q)}; };
  p.set_phase(0);
  for (std::size_t i = after_op + 1; i < ops_.size(); ++i) {
    const auto& o = ops_[i];
    const auto& t = o.targets;
    switch (o.type) {
      case OpType::kReset:
      case OpType::kResetX:
        for (auto q : t) p.set(q, false, false);
        break;
      case OpType::kH:
        for (auto q : t) {
          auto [x, z] = get(q);
          p.set(q, z, x);
        }
        break;
      case OpType::kS:
      case OpType::kSDag:
        for (auto q : t) {
          auto [x, z] = get(q);
          p.set(q, x, z ^ x);
        }
        break;
      case OpType::kCX:
        for (std::size_t j = 0; j < t.size(); j += 2) {
          auto [xc, zc] = get(t[j]);
          auto [xt, zt] = get(t[j + 1]);
          p.set(t[j], xc, zc ^ zt);
          p.set(t[j + 1], xt ^ xc, zt);
        }
        break;
      case OpType::kCZ:
        for (std::size_t j = 0; j < t.size(); j += 2) {
          auto [xa, za] = get(t[j]);
          auto [xb, zb] = get(t[j + 1]);
          p.set(t[j], xa, za ^ xb);
          p.set(t[j + 1], xb, zb ^ xa);
        }
        break;
      case OpType::kSqrtZZ:
        for (std::size_t j = 0; j < t.size(); j += 2) {
          auto [xa, za] = get(t[j]);
          auto [xb, zb] = get(t[j + 1]);
          bool s = xa ^ xb;
          p.set(t[j], xa, za ^ s);
          p.set(t[j + 1], xb, zb ^ s);
        }
        break;
      case OpType::kKraus:
        throw std::invalid_argument("cannot propagate through KRAUS");
      default:
        break;
    }
  }
  return p;
}

std::string NoisyCircuit::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "QUBITS " << n_ << "\n";
  for (auto& o : ops_) {
    if (o.type == OpType::kKraus) throw std::invalid_argument("KRAUS has no text form");
    os << op_name(o.type);
    if (!o.args.empty()) {
      os << "(";
      for (std::size_t i = 0; i < o.args.size(); ++i) os << (i ? "," : "") << o.args[i];
      os << ")";
    }
    if (o.type == OpType::kSlot) os << " " << o.slot;
    for (auto q : o.targets) os << " " << q;
    for (auto& p : o.paulis) os << " " << (p.phase() == 2 ? "-" : "+") << p.letters();
    os << "\n";
  }
  for (auto& d : detectors_) {
    os << "DETECTOR " << (d.postselect ? "ps" : "free");
    if (!d.tag.empty()) os << " tag=" << d.tag;
    for (auto m : d.meas) os << " " << m;
    os << "\n";
  }
  for (auto& ob : observables_) {
    os << "OBSERVABLE";
    if (!ob.name.empty()) os << " name=" << ob.name;
    for (auto m : ob.meas) os << " " << m;
    os << "\n";
  }
  return os.str();
}

NoisyCircuit NoisyCircuit::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  NoisyCircuit c;
  bool have_n = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "QUBITS") {
      ls >> c.n_;
      have_n = true;
      continue;
    }
    if (!have_n) throw std::invalid_argument("circuit text must start with QUBITS");
    if (head == "DETECTOR" || head == "OBSERVABLE") {
      std::vector<std::size_t> meas;
      bool ps = true;
      std::string tag, tok;
      while (ls >> tok) {
        if (tok == "ps") ps = true;
        else if (tok == "free") ps = false;
        else if (tok.rfind("tag=", 0) == 0 || tok.rfind("name=", 0) == 0) tag = tok.substr(tok.find('=') + 1);
        else meas.push_back(std::stoul(tok));
      }
      if (head == "DETECTOR") c.add_detector(meas, ps, tag);
      else c.add_observable(meas, tag);
      continue;
    }
    Op o;
    std::string name = head;
    auto paren = head.find('(');
    if (paren != std::string::npos) {
      name = head.substr(0, paren);
      auto close = head.find(')', paren);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced parenthesis: " + line);
      std::stringstream as(head.substr(paren + 1, close - paren - 1));
      std::string a;
      while (std::getline(as, a, ',')) o.args.push_back(std::stod(a));
    }
    o.type = parse_op_name(name);
    if (o.type == OpType::kSlot) ls >> o.slot;
    std::string tok;
    while (ls >> tok) {
      if (tok[0] == '+' || tok[0] == '-') o.paulis.push_back(PauliOperator::from_string(tok));
      else o.targets.push_back(std::stoul(tok));
    }
    c.append(std::move(o));
  }
  c.validate();
  return c;
}

void NoisyBuilder::set_active(const std::vector<std::size_t>& q) {
  active_.assign(c_.n_qubits(), false);
  touched_.assign(c_.n_qubits(), false);
  activate(q);
}

void NoisyBuilder::activate(const std::vector<std::size_t>& q) {
  if (active_.size() != c_.n_qubits()) {
    active_.assign(c_.n_qubits(), false);
    touched_.assign(c_.n_qubits(), false);
  }
  for (auto x : q) active_[x] = true;
}

void NoisyBuilder::deactivate(const std::vector<std::size_t>& q) {
  activate({});
  for (auto x : q) active_[x] = false;
}

void NoisyBuilder::touch(const std::vector<std::size_t>& q) {
  if (touched_.size() != c_.n_qubits()) touched_.assign(c_.n_qubits(), false);
  for (auto x : q) touched_[x] = true;
}

void NoisyBuilder::reset(const std::vector<std::size_t>& q) {
  c_.reset(q);
  if (p_ > 0) c_.depolarize1(q, p_);
  touch(q);
}

void NoisyBuilder::reset_x(const std::vector<std::size_t>& q) {
  c_.reset_x(q);
  if (p_ > 0) c_.depolarize1(q, p_);
  touch(q);
}

void NoisyBuilder::h(const std::vector<std::size_t>& q) {
  c_.h(q);
  if (p_ > 0) c_.depolarize1(q, p_);
  touch(q);
}

void NoisyBuilder::cx(const std::vector<std::size_t>& pairs) {
  c_.cx(pairs);
  if (p_ > 0) c_.depolarize2(pairs, p_);
  touch(pairs);
}

std::size_t NoisyBuilder::measure(const std::vector<std::size_t>& q) {
  if (p_ > 0) c_.depolarize1(q, p_);
  touch(q);
  return c_.measure(q);
}

std::size_t NoisyBuilder::measure_x(const std::vector<std::size_t>& q) {
  if (p_ > 0) c_.depolarize1(q, p_);
  touch(q);
  return c_.measure_x(q);
}

void NoisyBuilder::tick_fast() {
  bool saved = idle_;
  idle_ = idle_ && fast_idle_;
  tick();
  idle_ = saved;
}

void NoisyBuilder::tick() {
  if (touched_.size() != c_.n_qubits()) touched_.assign(c_.n_qubits(), false);
  if (active_.size() != c_.n_qubits()) active_.assign(c_.n_qubits(), false);
  if (idle_ && p_ > 0) {
    std::vector<std::size_t> idle;
    for (std::size_t q = 0; q < c_.n_qubits(); ++q)
      if (active_[q] && !touched_[q]) idle.push_back(q);
    c_.depolarize1(idle, p_);
  }
  c_.tick();
  std::fill(touched_.begin(), touched_.end(), false);
}

}  // namespace rotft

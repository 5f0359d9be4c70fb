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

#include "rotft/code.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rotft {

namespace {

// GF(2) rank of the symplectic vectors of `ops`.
std::size_t symplectic_rank(const std::vector<PauliOperator>& ops) {
  if (ops.empty()) return 0;
  std::size_t n = ops[0].n_qubits();
  std::vector<std::vector<bool>> rows;
  for (auto& p : ops) {
    std::vector<bool> v(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      v[q] = p.x(q);
      v[n + q] = p.z(q);
    }
    rows.push_back(std::move(v));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv][col]) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && rows[i][col])
        for (std::size_t c = 0; c < 2 * n; ++c) rows[i][c] = rows[i][c] ^ rows[rank][c];
    ++rank;
  }
  return rank;
}

// Visits every Pauli of weight w in canonical order.
void for_each_weight(std::size_t n, std::size_t w,
                     const std::function<bool(const PauliOperator&)>& f) {
  std::vector<std::size_t> sup(w);
  for (std::size_t i = 0; i < w; ++i) sup[i] = i;
  static const char kL[3] = {'X', 'Y', 'Z'};
  if (w > n) return;
  while (true) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < w; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      PauliOperator p(n);
      std::size_t v = c;
      // Most significant letter on the first support qubit.
      std::vector<int> digits(w);
      for (std::size_t i = w; i-- > 0; v /= 3) digits[i] = static_cast<int>(v % 3);
      for (std::size_t i = 0; i < w; ++i) p.set(sup[i], kL[digits[i]]);
      if (!f(p)) return;
    }
    if (w == 0) return;
    std::size_t i = w;
    while (i-- > 0) {
      if (sup[i] < n - w + i) {
        ++sup[i];
        for (std::size_t j = i + 1; j < w; ++j) sup[j] = sup[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

void StabilizerCode::validate() const {
  for (auto& g : generators) {
    if (g.n_qubits() != n) throw std::logic_error("generator size mismatch");
    if (!g.is_hermitian()) throw std::logic_error("generator is not Hermitian");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (!generators[i].commutes(generators[j]))
        throw std::logic_error("generators " + std::to_string(i) + " and " +
                               std::to_string(j) + " anticommute");
  if (symplectic_rank(generators) != generators.size())
    throw std::logic_error("dependent generators");
  std::size_t gauge_rank = symplectic_rank(gauge_ops) > 0 ? gauge_ops.size() / 2 : 0;
  if (n - generators.size() - gauge_rank != k)
    throw std::logic_error("n - rank does not match k");
  for (auto& g : generators) {
    if (!g.commutes(logical_z) || !g.commutes(logical_x))
      throw std::logic_error("logical does not commute with generator " + g.str());
    for (auto& h : gauge_ops)
      if (!g.commutes(h)) throw std::logic_error("gauge does not commute with generator");
  }
  if (logical_z.commutes(logical_x)) throw std::logic_error("logicals commute");
  for (auto& h : gauge_ops)
    if (!h.commutes(logical_z) || !h.commutes(logical_x))
      throw std::logic_error("gauge does not commute with logicals");
}

std::vector<bool> StabilizerCode::syndrome(const PauliOperator& p) const {
  std::vector<bool> s(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) s[i] = !generators[i].commutes(p);
  return s;
}

std::size_t StabilizerCode::qubit_at(std::size_t row, std::size_t col) const {
  if (row >= rows || col >= cols) throw std::out_of_range("qubit_at");
  return col * rows + row;
}

std::vector<std::size_t> Plaquette::qubits() const {
  std::vector<std::size_t> q;
  for (int c : corners)
    if (c >= 0) q.push_back(static_cast<std::size_t>(c));
  return q;
}

std::vector<Plaquette> surface_plaquettes(std::size_t dz, std::size_t dx) {
  int R = static_cast<int>(dx), C = static_cast<int>(dz);
  std::vector<Plaquette> out;
  auto idx = [&](int r, int c) -> int {
    if (r < 0 || r >= R || c < 0 || c >= C) return -1;
    return c * R + r;
  };
  for (int r = -1; r < R; ++r) {
    for (int c = -1; c < C; ++c) {
      bool bulk = r >= 0 && r <= R - 2 && c >= 0 && c <= C - 2;
      char type = ((r + c + 2) % 2 == 0) ? 'X' : 'Z';
      bool keep = bulk;
      if (!bulk) {
        bool horiz = (r == -1 || r == R - 1) && c >= 0 && c <= C - 2;
        bool vert = (c == -1 || c == C - 1) && r >= 0 && r <= R - 2;
        keep = (horiz && type == 'X') || (vert && type == 'Z');
      }
      if (!keep) continue;
      Plaquette p;
      p.row = r;
      p.col = c;
      p.type = type;
      p.corners[0] = idx(r, c);
      p.corners[1] = idx(r, c + 1);
      p.corners[2] = idx(r + 1, c);
      p.corners[3] = idx(r + 1, c + 1);
      out.push_back(p);
    }
  }
  return out;
}

StabilizerCode four_one_one_two() {
  StabilizerCode c;
  c.name = "FourOneOneTwo";
  c.n = 4;
  c.k = 1;
  c.distance = 2;
  c.rows = 2;
  c.cols = 2;
  c.generators = {PauliOperator::from_string("ZZZZ"), PauliOperator::from_string("XXXX")};
  c.gauge_ops = {PauliOperator::from_string("ZZII"), PauliOperator::from_string("XIXI")};
  c.logical_z = PauliOperator::from_string("ZIZI");
  c.logical_x = PauliOperator::from_string("XXII");
  c.validate();
  return c;
}

StabilizerCode rotated_surface(std::size_t dz, std::size_t dx) {
  if (dz < 2 || dx < 2) throw std::invalid_argument("rotated_surface: dz, dx must be >= 2");
  StabilizerCode c;
  c.name = "RotatedSurface(" + std::to_string(dz) + "," + std::to_string(dx) + ")";
  c.n = dz * dx;
  c.k = 1;
  c.rows = dx;
  c.cols = dz;
  c.distance = std::min(dz, dx);
  for (auto& p : surface_plaquettes(dz, dx))
    c.generators.push_back(PauliOperator::on(c.n, p.qubits(), p.type));
  std::vector<std::size_t> row0, col0;
  for (std::size_t j = 0; j < dz; ++j) row0.push_back(j * dx);
  for (std::size_t i = 0; i < dx; ++i) col0.push_back(i);
  c.logical_z = PauliOperator::on(c.n, row0, 'Z');
  c.logical_x = PauliOperator::on(c.n, col0, 'X');
  c.validate();
  return c;
}

StabilizerCode build_code(CodeId id, const std::vector<std::size_t>& params) {
  switch (id) {
    case CodeId::kFourOneOneTwo:
      return four_one_one_two();
    case CodeId::kRotatedSurface:
      if (params.size() != 2) throw std::invalid_argument("RotatedSurface needs {dz, dx}");
      return rotated_surface(params[0], params[1]);
  }
  throw std::invalid_argument("unknown code id");
}

StabilizerCode gauge_fixed(const StabilizerCode& code, const PauliOperator& gauge) {
  StabilizerCode c = code;
  auto it = std::find_if(c.gauge_ops.begin(), c.gauge_ops.end(),
                         [&](const PauliOperator& g) { return g.same_letters(gauge); });
  if (it == c.gauge_ops.end()) throw std::invalid_argument("not a gauge operator of the code");
  c.generators.push_back(gauge);
  c.gauge_ops.clear();
  c.name += "+" + gauge.letters();
  c.validate();
  return c;
}

nlohmann::json code_to_json(const StabilizerCode& code) {
  auto enc = [](const PauliOperator& p) {
    std::string xs, zs;
    for (std::size_t q = 0; q < p.n_qubits(); ++q) {
      xs += p.x(q) ? '1' : '0';
      zs += p.z(q) ? '1' : '0';
    }
    return nlohmann::json{{"x", xs}, {"z", zs}, {"phase", p.phase()}};
  };
  nlohmann::json j;
  j["name"] = code.name;
  j["n"] = code.n;
  j["k"] = code.k;
  j["distance"] = code.distance;
  j["rows"] = code.rows;
  j["cols"] = code.cols;
  for (auto& g : code.generators) j["generators"].push_back(enc(g));
  j["gauge_ops"] = nlohmann::json::array();
  for (auto& g : code.gauge_ops) j["gauge_ops"].push_back(enc(g));
  j["logical_z"] = enc(code.logical_z);
  j["logical_x"] = enc(code.logical_x);
  return j;
}

StabilizerCode code_from_json(const nlohmann::json& j) {
  auto dec = [](const nlohmann::json& e) {
    std::string xs = e.at("x"), zs = e.at("z");
    if (xs.size() != zs.size()) throw std::invalid_argument("x/z length mismatch");
    PauliOperator p(xs.size());
    for (std::size_t q = 0; q < xs.size(); ++q) p.set(q, xs[q] == '1', zs[q] == '1');
    p.set_phase(e.value("phase", 0));
    return p;
  };
  StabilizerCode c;
  c.name = j.at("name");
  c.n = j.at("n");
  c.k = j.at("k");
  c.distance = j.at("distance");
  c.rows = j.value("rows", 0);
  c.cols = j.value("cols", 0);
  for (auto& g : j.at("generators")) c.generators.push_back(dec(g));
  for (auto& g : j.at("gauge_ops")) c.gauge_ops.push_back(dec(g));
  c.logical_z = dec(j.at("logical_z"));
  c.logical_x = dec(j.at("logical_x"));
  c.validate();
  return c;
}

Mat syndrome_projector(const StabilizerCode& code, const std::vector<bool>& s) {
  if (code.n > 12) throw std::invalid_argument("dense projector limited to n <= 12");
  int d = 1 << code.n;
  Mat proj = Mat::Identity(d, d);
  for (std::size_t i = 0; i < code.generators.size(); ++i) {
    double sign = s[i] ? -1.0 : 1.0;
    proj = proj * (0.5 * (Mat::Identity(d, d) + sign * pauli_matrix(code.generators[i])));
  }
  return proj;
}

Mat code_projector(const StabilizerCode& code) {
  return syndrome_projector(code, std::vector<bool>(code.generators.size(), false));
}

Mat logical_basis(const StabilizerCode& code) {
  if (code.k != 1) throw std::invalid_argument("logical_basis supports k = 1");
  int d = 1 << code.n;
  Mat p0 = code_projector(code);
  Mat pz = p0 * 0.5 * (Mat::Identity(d, d) + pauli_matrix(code.logical_z));
  Eigen::Index best = 0;
  double bn = -1;
  for (Eigen::Index c = 0; c < d; ++c) {
    double nn = pz.col(c).norm();
    if (nn > bn + 1e-12) {
      bn = nn;
      best = c;
    }
  }
  Vec zero = pz.col(best) / bn;
  Vec one = pauli_matrix(code.logical_x) * zero;
  Mat basis(d, 2);
  basis.col(0) = zero;
  basis.col(1) = one;
  return basis;
}

bool Filter::contains_syndrome(const std::vector<bool>& s) const {
  for (auto& p : representatives)
    if (code.syndrome(p) == s) return true;
  return false;
}

Filter filter_projector(const StabilizerCode& code, std::size_t r, bool qed) {
  std::size_t rmax = qed ? code.distance - 1 : code.t();
  if (r > rmax) throw std::out_of_range("filter order r out of range");
  Filter f;
  f.code = code;
  f.r = r;
  std::map<std::vector<bool>, PauliOperator> classes;
  for (std::size_t w = 0; w <= r; ++w)
    for_each_weight(code.n, w, [&](const PauliOperator& p) {
      classes.emplace(code.syndrome(p), p);  // first visit is canonical minimum
      return true;
    });
  for (auto& [s, p] : classes) f.representatives.push_back(p);
  std::sort(f.representatives.begin(), f.representatives.end(), PauliOperator::canonical_less);
  if (code.n <= 12) {
    int d = 1 << code.n;
    Mat proj = Mat::Zero(d, d);
    for (auto& [s, p] : classes) proj += syndrome_projector(code, s);
    f.projector = proj;
  }
  return f;
}

std::map<std::vector<bool>, PauliOperator> recovery_table(const StabilizerCode& code) {
  std::map<std::vector<bool>, PauliOperator> table;
  std::size_t target = std::size_t{1} << code.generators.size();
  for (std::size_t w = 0; w <= code.n && table.size() < target; ++w)
    for_each_weight(code.n, w, [&](const PauliOperator& p) {
      table.emplace(code.syndrome(p), p);
      return table.size() < target;
    });
  return table;
}

Mat logical_state(const Mat& rho, const StabilizerCode& code) {
  Mat b = logical_basis(code);
  return b.adjoint() * rho * b;
}

Mat subsystem_logical_state(const Mat& rho, const StabilizerCode& code) {
  if (code.gauge_ops.size() != 2) throw std::invalid_argument("expected gauge_ops {g_Z, g_X}");
  Mat b0 = logical_basis(gauge_fixed(code, code.gauge_ops[0]));
  Mat b1 = pauli_matrix(code.gauge_ops[1]) * b0;
  return b0.adjoint() * rho * b0 + b1.adjoint() * rho * b1;
}

DecodeResult ideal_decode(const Mat& rho, const StabilizerCode& code, DecodeMode mode,
                          double tol) {
  if (rho.rows() != (Eigen::Index{1} << code.n))
    throw std::invalid_argument("ideal_decode: state dimension mismatch");
  DecodeResult res;
  if (mode == DecodeMode::kQED) {
    Mat p0 = code_projector(code);
    Mat out = p0 * rho * p0;
    res.weight = out.trace().real();
    res.pass = res.weight > tol;
    if (res.pass) out /= res.weight;
    res.physical = out;
    res.logical = res.pass ? logical_state(out, code) : Mat::Zero(2, 2);
    return res;
  }
  auto table = recovery_table(code);
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (auto& [s, rec] : table) {
    Mat ps = syndrome_projector(code, s);
    Mat rm = pauli_matrix(rec);
    out += rm * ps * rho * ps * rm.adjoint();
  }
  res.physical = out;
  res.logical = logical_state(out, code);
  return res;
}

}  // namespace rotft

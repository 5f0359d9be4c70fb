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

#include "rotft/lindblad.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

namespace rotft {

namespace {

constexpr double kPi = std::numbers::pi;

Mat sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Mat sigma_plus() { return sigma_minus().transpose(); }

Mat number_op() {
  Mat m = Mat::Zero(2, 2);
  m(1, 1) = 1;
  return m;
}

Mat pz() { return pauli_1q('Z'); }

Mat qutrit_op(int row, int col, cplx v) {
  Mat m = Mat::Zero(3, 3);
  m(row, col) = v;
  return m;
}

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

// Common data-qubit setup. Returns (dims, data, rotated subsystem ids).
struct Layout {
  std::vector<int> dims;
  std::vector<int> data;
  std::vector<int> rotated_pos;
  int a = -1, b = -1;  // subsystems of D0 and D2
};

Layout make_layout(bool with_ancilla, bool full) {
  Layout l;
  int off = 0;
  if (with_ancilla) {
    l.dims.push_back(3);
    off = 1;
  }
  int nd = full ? 4 : 2;
  for (int i = 0; i < nd; ++i) {
    l.dims.push_back(2);
    l.data.push_back(off + i);
  }
  if (full) {
    l.rotated_pos = {0, 2};
    l.a = off + 0;
    l.b = off + 2;
  } else {
    l.rotated_pos = {0, 1};
    l.a = off + 0;
    l.b = off + 1;
  }
  return l;
}

void add_data_jumps(LindbladModel& m, const Layout& l, const GateParams& gp,
                    const std::vector<int>& qubits) {
  for (int s : qubits) {
    std::string tag = (s == l.a) ? "D0" : "D2";
    m.jumps.push_back({"eg:" + tag, embed_op(sigma_minus(), m.dims, {s}), gp.gamma});
    m.jumps.push_back({"phi:" + tag, embed_op(number_op(), m.dims, {s}), gp.gamma});
    if (gp.excitation)
      m.jumps.push_back({"ge:" + tag, embed_op(sigma_plus(), m.dims, {s}), gp.gamma_up});
  }
}

}  // namespace

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::kDirect: return "dispersive";
    case GateKind::kAncilla: return "ancilla";
    case GateKind::kNaive: return "naive";
  }
  return "?";
}

GateKind parse_gate_kind(const std::string& s) {
  if (s == "dispersive" || s == "direct") return GateKind::kDirect;
  if (s == "ancilla") return GateKind::kAncilla;
  if (s == "naive") return GateKind::kNaive;
  throw std::invalid_argument("unknown gate kind: " + s);
}

int LindbladModel::dim() const {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

double LindbladModel::total_time() const {
  double t = 0;
  for (auto& s : stages) t += s.duration;
  return t;
}

void LindbladModel::validate() const {
  int d = dim();
  for (auto& s : stages) {
    if (s.hamiltonian.rows() != d || s.hamiltonian.cols() != d)
      throw std::invalid_argument("stage Hamiltonian has wrong dimension");
    double scale = std::max(1.0, s.hamiltonian.cwiseAbs().maxCoeff());
    if (hermiticity_error(s.hamiltonian) > 1e-12 * scale)
      throw std::invalid_argument("stage Hamiltonian is not Hermitian");
    if (s.duration < 0) throw std::invalid_argument("negative stage duration");
    if (!s.active.empty() && s.active.size() != jumps.size())
      throw std::invalid_argument("jump mask size mismatch");
  }
  for (auto& j : jumps) {
    if (j.rate < 0) throw std::invalid_argument("negative jump rate");
    if (j.op.rows() != d) throw std::invalid_argument("jump has wrong dimension");
  }
}

LindbladModel direct_gate_model(double phi, const GateParams& gp, bool full) {
  Layout l = make_layout(false, full);
  LindbladModel m;
  m.kind = GateKind::kDirect;
  m.phi = phi;
  m.dims = l.dims;
  m.data = l.data;
  m.rotated = l.rotated_pos;
  Stage st;
  st.label = "ZZ";
  st.duration = std::abs(phi) / gp.chi;
  st.hamiltonian = -sgn(phi) * gp.chi * embed_op(kron(pz(), pz()), m.dims, {l.a, l.b});
  m.stages.push_back(st);
  add_data_jumps(m, l, gp, {l.a, l.b});
  m.validate();
  return m;
}

LindbladModel ancilla_gate_model(double phi, const GateParams& gp, bool full) {
  Layout l = make_layout(true, full);
  LindbladModel m;
  m.kind = GateKind::kAncilla;
  m.phi = phi;
  m.dims = l.dims;
  m.data = l.data;
  m.rotated = l.rotated_pos;
  m.ancilla = 0;
  const cplx i(0, 1);
  Mat ygf = qutrit_op(0, 2, -i) + qutrit_op(2, 0, i);
  Mat xgf = qutrit_op(0, 2, 1) + qutrit_op(2, 0, 1);
  Mat pf = qutrit_op(2, 2, 1);
  Mat ya = embed_op(ygf, m.dims, {0});
  Mat xa = embed_op(xgf, m.dims, {0});
  Mat ncount = embed_op(number_op(), m.dims, {l.a}) + embed_op(number_op(), m.dims, {l.b});
  Mat cz = gp.chi * embed_op(pf, m.dims, {0}) * ncount;

  m.jumps.push_back({"eg:A", embed_op(qutrit_op(0, 1, 1), m.dims, {0}), gp.gamma});
  m.jumps.push_back({"fe:A", embed_op(qutrit_op(1, 2, 1), m.dims, {0}), gp.gamma});
  Mat deph = qutrit_op(1, 1, 1) + qutrit_op(2, 2, gp.delta_f);
  m.jumps.push_back({"phi:A", embed_op(deph, m.dims, {0}), gp.gamma});
  if (gp.excitation) {
    m.jumps.push_back({"ge:A", embed_op(qutrit_op(1, 0, 1), m.dims, {0}), gp.gamma_up});
  }
  std::size_t n_anc = m.jumps.size();
  add_data_jumps(m, l, gp, {l.a, l.b});
  std::size_t nj = m.jumps.size();

  std::vector<bool> anc_only(nj, false), all(nj, true);
  for (std::size_t j = 0; j < n_anc; ++j) anc_only[j] = true;
  const std::vector<bool>& outer = gp.data_noise_all_stages ? all : anc_only;

  auto stage = [&](const std::string& label, double dur, const Mat& h,
                   const std::vector<bool>& mask) {
    Stage s;
    s.label = label;
    s.duration = dur;
    s.hamiltonian = h;
    s.active = mask;
    m.stages.push_back(s);
  };
  Mat zero = Mat::Zero(m.dim(), m.dim());
  auto idle = [&](const std::vector<bool>& mask) {
    if (gp.stage_idle > 0) stage("idle", gp.stage_idle, zero, mask);
  };
  stage("Y+", kPi / (4 * gp.omega), gp.omega * ya, outer);
  idle(outer);
  stage("CZ1", kPi / gp.chi, cz, all);
  idle(all);
  stage("Xphi", std::abs(phi) / gp.omega, -sgn(phi) * gp.omega * xa, all);
  idle(all);
  stage("CZ2", kPi / gp.chi, cz, all);
  idle(outer);
  stage("Y-", kPi / (4 * gp.omega), -gp.omega * ya, outer);
  m.validate();
  return m;
}

LindbladModel naive_gate_model(double phi, const GateParams& gp, bool full) {
  Layout l = make_layout(false, full);
  LindbladModel m;
  m.kind = GateKind::kNaive;
  m.phi = phi;
  m.dims = l.dims;
  m.data = l.data;
  m.rotated = l.rotated_pos;
  // CNOT(D0 -> D2) as exp(-i pi |1><1| (x) |-><-|).
  Mat minus = 0.5 * (Mat::Identity(2, 2) - pauli_1q('X'));
  Mat cnot_h = gp.chi * embed_op(kron(number_op(), minus), m.dims, {l.a, l.b});
  add_data_jumps(m, l, gp, {l.b});
  std::size_t nj = m.jumps.size();
  std::vector<bool> none(nj, false), all(nj, true);
  m.stages.push_back({"CNOT1", kPi / gp.chi, cnot_h, none});
  m.stages.push_back({"RZ", std::abs(phi) / gp.chi,
                      -sgn(phi) * gp.chi * embed_op(pz(), m.dims, {l.b}), all});
  m.stages.push_back({"CNOT2", kPi / gp.chi, cnot_h, none});
  m.validate();
  return m;
}

LindbladModel gate_model(GateKind kind, double phi, const GateParams& gp, bool full) {
  switch (kind) {
    case GateKind::kDirect: return direct_gate_model(phi, gp, full);
    case GateKind::kAncilla: return ancilla_gate_model(phi, gp, full);
    case GateKind::kNaive: return naive_gate_model(phi, gp, full);
  }
  throw std::invalid_argument("unknown gate kind");
}

Mat lindblad_generator(const LindbladModel& m, std::size_t k) {
  const Stage& st = m.stages.at(k);
  int d = m.dim();
  Mat id = Mat::Identity(d, d);
  const cplx i(0, 1);
  Mat l = -i * (kron(id, st.hamiltonian) - kron(st.hamiltonian.transpose(), id));
  for (std::size_t j = 0; j < m.jumps.size(); ++j) {
    if (!st.jump_active(j) || m.jumps[j].rate == 0) continue;
    const Mat& J = m.jumps[j].op;
    Mat jdj = J.adjoint() * J;
    l += m.jumps[j].rate *
         (kron(J.conjugate(), J) - 0.5 * kron(id, jdj) - 0.5 * kron(jdj.transpose(), id));
  }
  return l;
}

namespace {

double stage_rate(const LindbladModel& m, std::size_t k) {
  const Stage& st = m.stages[k];
  Eigen::SelfAdjointEigenSolver<Mat> es(st.hamiltonian, Eigen::EigenvaluesOnly);
  double hn = es.eigenvalues().cwiseAbs().maxCoeff();
  double g = 0;
  for (std::size_t j = 0; j < m.jumps.size(); ++j)
    if (st.jump_active(j)) g += m.jumps[j].rate;
  return hn + g;
}

long steps_for(const LindbladModel& m, std::size_t k) {
  double x = m.stages[k].duration * stage_rate(m, k) / 1e-3;
  return std::max(1L, static_cast<long>(std::ceil(x)));
}

Mat rk4_step(const Mat& l, double h) {
  Mat hl = h * l;
  Mat term = Mat::Identity(l.rows(), l.cols());
  Mat out = term;
  for (int k = 1; k <= 4; ++k) {
    term = term * hl / static_cast<double>(k);
    out += term;
  }
  return out;
}

Mat matrix_power(Mat base, long n) {
  Mat result = Mat::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = base * result;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Mat dissipator(const Mat& J, const Mat& JdJ, const Mat& rho) {
  return J * rho * J.adjoint() - 0.5 * (JdJ * rho + rho * JdJ);
}

Mat lindblad_rhs(const LindbladModel& m, std::size_t k, const Mat& rho,
                 const std::vector<Mat>& jdj) {
  const cplx i(0, 1);
  const Mat& h = m.stages[k].hamiltonian;
  Mat out = -i * (h * rho - rho * h);
  for (std::size_t j = 0; j < m.jumps.size(); ++j) {
    if (!m.stages[k].jump_active(j) || m.jumps[j].rate == 0) continue;
    out += m.jumps[j].rate * dissipator(m.jumps[j].op, jdj[j], rho);
  }
  return out;
}

}  // namespace

Mat stage_propagator(const LindbladModel& m, std::size_t k) {
  int d = m.dim();
  if (m.stages.at(k).duration == 0) return Mat::Identity(d * d, d * d);
  long n = steps_for(m, k);
  double h = m.stages[k].duration / static_cast<double>(n);
  return matrix_power(rk4_step(lindblad_generator(m, k), h), n);
}

Mat full_propagator(const LindbladModel& m) {
  if (m.dim() > 16) throw std::invalid_argument("full_propagator limited to dim <= 16");
  int d = m.dim();
  Mat s = Mat::Identity(d * d, d * d);
  for (std::size_t k = 0; k < m.stages.size(); ++k) s = stage_propagator(m, k) * s;
  // Trace preservation: vec(I)^dag S = vec(I)^dag.
  Vec vi = vec(Mat::Identity(d, d));
  double drift = (vi.adjoint() * s - vi.adjoint()).cwiseAbs().maxCoeff();
  if (drift > 1e-6)
    throw std::runtime_error("propagator trace drift " + std::to_string(drift));
  return s;
}

Mat evolve_full(const LindbladModel& m, const Mat& rho0) {
  if (rho0.rows() != m.dim()) throw std::invalid_argument("evolve_full: dimension mismatch");
  Mat out;
  if (m.dim() <= 16) {
    out = apply_superop(full_propagator(m), rho0);
  } else {
    std::vector<Mat> jdj;
    for (auto& j : m.jumps) jdj.push_back(j.op.adjoint() * j.op);
    out = rho0;
    for (std::size_t k = 0; k < m.stages.size(); ++k) {
      if (m.stages[k].duration == 0) continue;
      long n = steps_for(m, k);
      double h = m.stages[k].duration / static_cast<double>(n);
      for (long s = 0; s < n; ++s) {
        Mat k1 = lindblad_rhs(m, k, out, jdj);
        Mat k2 = lindblad_rhs(m, k, out + 0.5 * h * k1, jdj);
        Mat k3 = lindblad_rhs(m, k, out + 0.5 * h * k2, jdj);
        Mat k4 = lindblad_rhs(m, k, out + h * k3, jdj);
        out += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
  }
  double drift = std::abs(out.trace() - rho0.trace());
  if (drift > 1e-6) throw std::runtime_error("evolve_full: trace drift " + std::to_string(drift));
  return out;
}

Mat schedule_unitary(const LindbladModel& m) {
  Mat u = Mat::Identity(m.dim(), m.dim());
  for (auto& s : m.stages) u = expm_hermitian(s.hamiltonian, s.duration) * u;
  return u;
}

namespace {

// Per-stage spectral data for exact unitary propagation inside a stage.
struct StageSpectrum {
  Mat v;
  Eigen::VectorXd e;
  double duration = 0;
  Mat at(double t) const {
    Vec ph(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) ph(i) = std::exp(cplx(0, -e(i) * t));
    return v * ph.asDiagonal() * v.adjoint();
  }
};

struct ScheduleData {
  std::vector<StageSpectrum> spec;
  std::vector<Mat> before;  // U(start of stage k, 0)
  std::vector<Mat> after;   // U(T, end of stage k)
  Mat total;
  std::vector<Mat> jdj;
};

ScheduleData schedule_data(const LindbladModel& m) {
  ScheduleData sd;
  int d = m.dim();
  Mat u = Mat::Identity(d, d);
  for (auto& st : m.stages) {
    Eigen::SelfAdjointEigenSolver<Mat> es(st.hamiltonian);
    StageSpectrum sp{es.eigenvectors(), es.eigenvalues(), st.duration};
    sd.before.push_back(u);
    u = sp.at(st.duration) * u;
    sd.spec.push_back(std::move(sp));
  }
  sd.total = u;
  sd.after.resize(m.stages.size());
  Mat tail = Mat::Identity(d, d);
  for (std::size_t k = m.stages.size(); k-- > 0;) {
    sd.after[k] = tail;
    tail = tail * sd.spec[k].at(m.stages[k].duration);
  }
  for (auto& j : m.jumps) sd.jdj.push_back(j.op.adjoint() * j.op);
  return sd;
}

// Composite Simpson nodes and weights on [0, tau].
void simpson(int n, double tau, std::vector<double>& t, std::vector<double>& w) {
  if (n < 3) throw std::invalid_argument("quadrature_points must be >= 3");
  if (n % 2 == 0) ++n;
  t.assign(n, 0);
  w.assign(n, 0);
  double h = tau / (n - 1);
  for (int i = 0; i < n; ++i) {
    t[i] = i * h;
    w[i] = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    w[i] *= h / 3.0;
  }
}

Mat order_one(const LindbladModel& m, const ScheduleData& sd, const Mat& rho, int npts) {
  int d = m.dim();
  Mat out = Mat::Zero(d, d);
  std::vector<double> t, w;
  for (std::size_t k = 0; k < m.stages.size(); ++k) {
    double tau = m.stages[k].duration;
    if (tau == 0) continue;
    simpson(npts, tau, t, w);
    for (std::size_t i = 0; i < t.size(); ++i) {
      Mat ua = sd.spec[k].at(t[i]) * sd.before[k];
      Mat ub = sd.after[k] * sd.spec[k].at(tau - t[i]);
      Mat r = ua * rho * ua.adjoint();
      Mat acc = Mat::Zero(d, d);
      for (std::size_t j = 0; j < m.jumps.size(); ++j) {
        if (!m.stages[k].jump_active(j) || m.jumps[j].rate == 0) continue;
        acc += m.jumps[j].rate * dissipator(m.jumps[j].op, sd.jdj[j], r);
      }
      out += w[i] * (ub * acc * ub.adjoint());
    }
  }
  return out;
}

Mat total_dissipator(const LindbladModel& m, const ScheduleData& sd, std::size_t k,
                     const Mat& rho) {
  Mat acc = Mat::Zero(rho.rows(), rho.cols());
  for (std::size_t j = 0; j < m.jumps.size(); ++j) {
    if (!m.stages[k].jump_active(j) || m.jumps[j].rate == 0) continue;
    acc += m.jumps[j].rate * dissipator(m.jumps[j].op, sd.jdj[j], rho);
  }
  return acc;
}

// Order-2 term by nested trapezoid recurrences on a per-stage grid.
Mat order_two(const LindbladModel& m, const ScheduleData& sd, const Mat& rho, int npts) {
  int d = m.dim();
  Mat r0 = rho, r1 = Mat::Zero(d, d), r2 = Mat::Zero(d, d);
  for (std::size_t k = 0; k < m.stages.size(); ++k) {
    double tau = m.stages[k].duration;
    if (tau == 0) continue;
    int n = std::max(npts, 3) - 1;
    double h = tau / n;
    Mat uh = sd.spec[k].at(h);
    auto conj = [&](const Mat& x) { return Mat(uh * x * uh.adjoint()); };
    for (int s = 0; s < n; ++s) {
      Mat d0 = total_dissipator(m, sd, k, r0);
      Mat d1 = total_dissipator(m, sd, k, r1);
      Mat n0 = conj(r0);
      Mat n1 = conj(r1) + 0.5 * h * (conj(d0) + total_dissipator(m, sd, k, n0));
      Mat n2 = conj(r2) + 0.5 * h * (conj(d1) + total_dissipator(m, sd, k, n1));
      r0 = n0;
      r1 = n1;
      r2 = n2;
    }
  }
  return r2;
}

}  // namespace

Mat dyson_term(const DysonPropagator& p, const Mat& rho0, int q) {
  const LindbladModel& m = p.model;
  if (rho0.rows() != m.dim()) throw std::invalid_argument("dyson_term: dimension mismatch");
  if (p.quadrature_points < 3) throw std::invalid_argument("quadrature_points must be >= 3");
  ScheduleData sd = schedule_data(m);
  switch (q) {
    case 0: return sd.total * rho0 * sd.total.adjoint();
    case 1: return order_one(m, sd, rho0, p.quadrature_points);
    case 2: return order_two(m, sd, rho0, p.quadrature_points);
    default: throw std::invalid_argument("Dyson order > 2 not implemented");
  }
}

Mat evolve_truncated(const DysonPropagator& p, const Mat& rho0) {
  if (p.order < 0 || p.order > 2) throw std::invalid_argument("Dyson order must be 0..2");
  Mat out = dyson_term(p, rho0, 0);
  for (int q = 1; q <= p.order; ++q) out += dyson_term(p, rho0, q);
  return out;
}

Mat logical_rz(double phi) {
  Mat u = Mat::Zero(2, 2);
  u(0, 0) = std::exp(cplx(0, phi));
  u(1, 1) = std::exp(cplx(0, -phi));
  return u;
}

namespace {

// Data-block view of the gate: every full-register operator A is reduced to
// <g|A|g> on the data (identity when there is no ancilla).
struct DataView {
  const LindbladModel* m;
  Mat embed;  // dim x data_dim isometry |g> (x) I
  int data_dim = 0;
};

DataView data_view(const LindbladModel& m) {
  DataView v;
  v.m = &m;
  int d = m.dim();
  v.data_dim = m.ancilla >= 0 ? d / m.dims[m.ancilla] : d;
  if (m.ancilla >= 0) {
    std::vector<int> rest;
    for (std::size_t s = 0; s < m.dims.size(); ++s)
      if (static_cast<int>(s) != m.ancilla) rest.push_back(m.dims[s]);
    v.embed = Mat::Zero(d, v.data_dim);
    for (int c = 0; c < v.data_dim; ++c) {
      Mat e = Mat::Zero(v.data_dim, v.data_dim);
      e(c, c) = 1;
      Mat full = attach_subsystem(e, m.dims, m.ancilla, 0);
      for (int r = 0; r < d; ++r)
        if (std::abs(full(r, r)) > 0.5) v.embed(r, c) = 1;
    }
  } else {
    v.embed = Mat::Identity(d, d);
  }
  return v;
}

// One linear map on data operators, stored as a sum of sandwich terms
// sum_i w_i L_i X R_i^dag.
struct SandwichMap {
  std::vector<double> w;
  std::vector<Mat> left;
  std::vector<Mat> right;
  Mat apply(const Mat& x) const {
    Mat out = Mat::Zero(left[0].rows(), right[0].rows());
    for (std::size_t i = 0; i < w.size(); ++i) out += w[i] * (left[i] * x * right[i].adjoint());
    return out;
  }
};

struct TermSet {
  std::vector<std::string> labels;
  std::vector<SandwichMap> maps;
};

// Order-0 map plus, for each jump, its order-1 map at unit rate divided by
// the schedule length.
TermSet build_terms(const LindbladModel& m, int npts, int max_order,
                    const Mat& u_data) {
  TermSet ts;
  DataView dv = data_view(m);
  ScheduleData sd = schedule_data(m);
  SandwichMap g0;
  g0.w = {1.0};
  g0.left = {u_data};
  g0.right = {u_data};
  ts.labels.push_back("order0");
  ts.maps.push_back(g0);
  if (max_order < 1) return ts;
  double T = m.total_time();
  std::vector<double> t, w;
  for (std::size_t j = 0; j < m.jumps.size(); ++j) {
    SandwichMap jm;
    Mat back = Mat::Zero(dv.data_dim, dv.data_dim);
    bool any = false;
    for (std::size_t k = 0; k < m.stages.size(); ++k) {
      double tau = m.stages[k].duration;
      if (tau == 0 || !m.stages[k].jump_active(j)) continue;
      any = true;
      simpson(npts, tau, t, w);
      Mat a_left = dv.embed.adjoint() * sd.after[k] * sd.spec[k].v;
      Mat b_right = sd.spec[k].v.adjoint() * sd.before[k] * dv.embed;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& e = sd.spec[k].e;
        Vec ph_l(e.size()), ph_r(e.size());
        for (Eigen::Index q = 0; q < e.size(); ++q) {
          ph_l(q) = std::exp(cplx(0, -e(q) * (tau - t[i])));
          ph_r(q) = std::exp(cplx(0, -e(q) * t[i]));
        }
        Mat lt = (a_left * ph_l.asDiagonal()) * sd.spec[k].v.adjoint();
        Mat rt = sd.spec[k].v * (ph_r.asDiagonal() * b_right);
        Mat kt = lt * (m.jumps[j].op * rt);
        jm.w.push_back(w[i] / T);
        jm.left.push_back(kt);
        jm.right.push_back(kt);
        back += (w[i] / T) * (lt * (sd.jdj[j] * rt));
      }
    }
    if (!any) continue;
    jm.w.push_back(-0.5);
    jm.left.push_back(back);
    jm.right.push_back(u_data);
    jm.w.push_back(-0.5);
    jm.left.push_back(u_data);
    jm.right.push_back(back);
    ts.labels.push_back("order1:" + m.jumps[j].name);
    ts.maps.push_back(std::move(jm));
  }
  return ts;
}

Mat range_basis(const Mat& proj) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (proj + proj.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < proj.rows(); ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  Mat b(proj.rows(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) b.col(i) = es.eigenvectors().col(keep[i]);
  return b;
}

// Residual of Y_i = c X_i with a single fitted c (c = 0 allowed).
double proportional_residual(const std::vector<Mat>& xs, const std::vector<Mat>& ys) {
  cplx num = 0;
  double den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i].adjoint() * ys[i]).trace();
    den += xs[i].squaredNorm();
  }
  cplx c = den > 0 ? num / den : cplx(0);
  double worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    worst = std::max(worst, trace_norm(ys[i] - c * xs[i]));
  return worst;
}

Mat physical_ideal(const StabilizerCode& code, const Mat& ideal_logical) {
  Mat b = logical_basis(code);
  return b * ideal_logical * b.adjoint();
}

Mat data_unitary(const LindbladModel& m) {
  DataView dv = data_view(m);
  return dv.embed.adjoint() * schedule_unitary(m) * dv.embed;
}

void check_model_code(const LindbladModel& m, const StabilizerCode& code) {
  if (m.data.size() != code.n)
    throw std::invalid_argument("model must carry every code qubit (full_register)");
}

}  // namespace

FtVerdict check_ft_gate(const LindbladModel& model, const StabilizerCode& code,
                        const Mat& ideal_logical, int r, int s, double tol,
                        int quadrature_points) {
  check_model_code(model, code);
  FtVerdict v;
  v.r = r;
  v.s = s;
  Filter fin = filter_projector(code, r);
  Filter fout = filter_projector(code, r + s);
  Mat pin = *fin.projector, pout = *fout.projector;
  Mat p0 = code_projector(code);
  Mat rid = physical_ideal(code, ideal_logical);
  Mat basis = range_basis(pin);
  TermSet ts = build_terms(model, quadrature_points, s, data_unitary(model));
  for (std::size_t t = 0; t < ts.maps.size(); ++t) {
    std::vector<Mat> xs, ys;
    double c1 = 0;
    for (Eigen::Index a = 0; a < basis.cols(); ++a)
      for (Eigen::Index b = 0; b < basis.cols(); ++b) {
        Mat in = basis.col(a) * basis.col(b).adjoint();
        Mat out = ts.maps[t].apply(in);
        c1 = std::max(c1, trace_norm(pout * out * pout - out));
        ys.push_back(p0 * out * p0);
        xs.push_back(rid * (p0 * in * p0) * rid.adjoint());
      }
    double c2 = proportional_residual(xs, ys);
    if (c1 > v.cond1_residual || c2 > v.cond2_residual) {
      if (std::max(c1, c2) >= std::max(v.cond1_residual, v.cond2_residual)) v.worst = ts.labels[t];
    }
    v.cond1_residual = std::max(v.cond1_residual, c1);
    v.cond2_residual = std::max(v.cond2_residual, c2);
  }
  v.cond1 = v.cond1_residual < tol;
  v.cond2 = v.cond2_residual < tol;
  v.pass = v.cond1 && v.cond2;
  return v;
}

JumpReport verify_jump_propagation(const LindbladModel& model, const StabilizerCode& code,
                                   const std::string& jump, double t1_fraction,
                                   const Mat& ideal_logical) {
  check_model_code(model, code);
  if (t1_fraction < 0 || t1_fraction > 1) throw std::invalid_argument("t1_fraction out of range");
  std::size_t j = model.jumps.size();
  for (std::size_t i = 0; i < model.jumps.size(); ++i)
    if (model.jumps[i].name == jump) j = i;
  if (j == model.jumps.size()) throw std::invalid_argument("unknown jump " + jump);
  ScheduleData sd = schedule_data(model);
  DataView dv = data_view(model);
  double t1 = t1_fraction * model.total_time();
  // Locate the stage holding t1 (last stage with start <= t1 and positive length).
  std::size_t k = 0;
  double start = 0, acc = 0;
  for (std::size_t i = 0; i < model.stages.size(); ++i) {
    if (model.stages[i].duration > 0 && acc <= t1 + 1e-18) {
      k = i;
      start = acc;
    }
    acc += model.stages[i].duration;
  }
  double local = std::min(std::max(t1 - start, 0.0), model.stages[k].duration);
  Mat ua = sd.spec[k].at(local) * sd.before[k];
  Mat ub = sd.after[k] * sd.spec[k].at(model.stages[k].duration - local);
  Mat kt = dv.embed.adjoint() * ub * model.jumps[j].op * ua * dv.embed;
  Mat bt = dv.embed.adjoint() * ub * sd.jdj[j] * ua * dv.embed;
  Mat ud = data_unitary(model);

  JumpReport rep;
  Mat prop = kt * ud.adjoint();
  auto paulis = all_paulis(code.n);
  double scale = prop.cwiseAbs().maxCoeff();
  Filter f1 = filter_projector(code, 1);
  rep.support_in_filter = true;
  for (auto& p : paulis) {
    cplx c = (pauli_matrix(p).adjoint() * prop).trace() / static_cast<double>(prop.rows());
    if (std::abs(c) > 1e-9 * std::max(scale, 1e-300)) {
      rep.support.push_back(p);
      if (!f1.contains_syndrome(code.syndrome(p))) rep.support_in_filter = false;
    }
  }
  Mat p0 = code_projector(code);
  Mat pi1 = *f1.projector;
  Mat rid = physical_ideal(code, ideal_logical);
  Mat basis = range_basis(p0);
  std::vector<Mat> xs, yj, yb;
  double jscale = std::max(kt.squaredNorm(), 1e-300), bscale = std::max(bt.norm(), 1e-300);
  for (Eigen::Index a = 0; a < basis.cols(); ++a)
    for (Eigen::Index b = 0; b < basis.cols(); ++b) {
      Mat in = basis.col(a) * basis.col(b).adjoint();
      Mat jo = kt * in * kt.adjoint() / jscale;
      Mat bo = -0.5 * (bt * in * ud.adjoint() + ud * in * bt.adjoint()) / bscale;
      rep.jump_cond1_residual = std::max(rep.jump_cond1_residual, trace_norm(pi1 * jo * pi1 - jo));
      rep.back_cond1_residual = std::max(rep.back_cond1_residual, trace_norm(pi1 * bo * pi1 - bo));
      rep.jump_code_weight = std::max(rep.jump_code_weight, trace_norm(p0 * jo * p0));
      xs.push_back(rid * in * rid.adjoint());
      yj.push_back(p0 * jo * p0);
      yb.push_back(p0 * bo * p0);
    }
  rep.jump_cond2_residual = proportional_residual(xs, yj);
  rep.back_cond2_residual = proportional_residual(xs, yb);
  return rep;
}

nlohmann::json verdict_to_json(const FtVerdict& v) {
  return {{"pass", v.pass},
          {"cond1", v.cond1},
          {"cond2", v.cond2},
          {"cond1_residual", v.cond1_residual},
          {"cond2_residual", v.cond2_residual},
          {"r", v.r},
          {"s", v.s},
          {"worst", v.worst}};
}

}  // namespace rotft

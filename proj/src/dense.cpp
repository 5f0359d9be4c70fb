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

#include "rotft/dense.h"

#include <cstdint>
#include <fstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rotft {

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Mat kron_all(const std::vector<Mat>& ops) {
  if (ops.empty()) return Mat::Identity(1, 1);
  Mat r = ops[0];
  for (std::size_t i = 1; i < ops.size(); ++i) r = kron(r, ops[i]);
  return r;
}

Mat pauli_1q(char p) {
  Mat m(2, 2);
  const cplx i(0, 1);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

Mat pauli_matrix(const PauliOperator& p) {
  std::vector<Mat> ops;
  for (std::size_t q = 0; q < p.n_qubits(); ++q) ops.push_back(pauli_1q(p.at(q)));
  static const cplx kPh[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return kPh[p.phase()] * kron_all(ops);
}

namespace {

int total_dim(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

std::vector<int> digits_of(int idx, const std::vector<int>& dims) {
  std::vector<int> dg(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    dg[s] = idx % dims[s];
    idx /= dims[s];
  }
  return dg;
}

int index_of(const std::vector<int>& dg, const std::vector<int>& dims) {
  int idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + dg[s];
  return idx;
}

}  // namespace

Mat embed_op(const Mat& op, const std::vector<int>& dims,
             const std::vector<int>& targets) {
  int d = total_dim(dims);
  int dt = 1;
  for (int t : targets) dt *= dims.at(t);
  if (op.rows() != dt || op.cols() != dt)
    throw std::invalid_argument("embed_op: operator size mismatch");
  Mat r = Mat::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    auto dg = digits_of(col, dims);
    int sub_col = 0;
    for (int t : targets) sub_col = sub_col * dims[t] + dg[t];
    for (int sub_row = 0; sub_row < dt; ++sub_row) {
      cplx v = op(sub_row, sub_col);
      if (v == cplx(0)) continue;
      auto out = dg;
      int rem = sub_row;
      for (int k = static_cast<int>(targets.size()) - 1; k >= 0; --k) {
        out[targets[k]] = rem % dims[targets[k]];
        rem /= dims[targets[k]];
      }
      r(index_of(out, dims), col) += v;
    }
  }
  return r;
}

Mat project_subsystem(const Mat& rho, const std::vector<int>& dims, int sys,
                      int level) {
  std::vector<int> rest;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (static_cast<int>(s) != sys) rest.push_back(dims[s]);
  int dr = total_dim(rest);
  Mat out(dr, dr);
  for (int i = 0; i < dr; ++i) {
    auto di = digits_of(i, rest);
    di.insert(di.begin() + sys, level);
    int fi = index_of(di, dims);
    for (int j = 0; j < dr; ++j) {
      auto dj = digits_of(j, rest);
      dj.insert(dj.begin() + sys, level);
      out(i, j) = rho(fi, index_of(dj, dims));
    }
  }
  return out;
}

Mat attach_subsystem(const Mat& rho_rest, const std::vector<int>& dims, int sys,
                     int level) {
  std::vector<int> rest;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (static_cast<int>(s) != sys) rest.push_back(dims[s]);
  int d = total_dim(dims), dr = total_dim(rest);
  Mat out = Mat::Zero(d, d);
  for (int i = 0; i < dr; ++i) {
    auto di = digits_of(i, rest);
    di.insert(di.begin() + sys, level);
    int fi = index_of(di, dims);
    for (int j = 0; j < dr; ++j) {
      auto dj = digits_of(j, rest);
      dj.insert(dj.begin() + sys, level);
      out(fi, index_of(dj, dims)) = rho_rest(i, j);
    }
  }
  return out;
}

Mat partial_trace(const Mat& rho, const std::vector<int>& dims, int sys) {
  Mat out = project_subsystem(rho, dims, sys, 0);
  for (int l = 1; l < dims[sys]; ++l) out += project_subsystem(rho, dims, sys, l);
  return out;
}

double trace_norm(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

double hermiticity_error(const Mat& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

Mat expm_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    ph(i) = std::exp(cplx(0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Mat ket_bra(const Vec& a, const Vec& b) { return a * b.adjoint(); }

Mat basis_proj(int dim, int level) {
  Mat m = Mat::Zero(dim, dim);
  m(level, level) = 1;
  return m;
}

Vec vec(const Mat& rho) {
  return Eigen::Map<const Vec>(rho.data(), rho.size());
}

Mat unvec(const Vec& v, int dim) {
  return Eigen::Map<const Mat>(v.data(), dim, dim);
}

Mat superop_left_right(const Mat& a, const Mat& b) {
  // vec(A X B) = (B^T kron A) vec(X)
  return kron(b.transpose(), a);
}

Mat superop_unitary(const Mat& u) { return superop_left_right(u, u.adjoint()); }

Mat superop_from_kraus(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  Mat s = superop_unitary(kraus[0]);
  for (std::size_t i = 1; i < kraus.size(); ++i) s += superop_unitary(kraus[i]);
  return s;
}

Mat apply_superop(const Mat& s, const Mat& rho) {
  return unvec(s * vec(rho), static_cast<int>(rho.rows()));
}

Mat choi_matrix(const Mat& s, int dim) {
  // C = sum_{ij} |i><j| (x) S(|i><j|), output factor second.
  Mat c = Mat::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Mat e = Mat::Zero(dim, dim);
      e(i, j) = 1;
      Mat out = apply_superop(s, e);
      c.block(i * dim, j * dim, dim, dim) = out;
    }
  return c;
}

std::vector<Mat> kraus_from_superop(const Mat& s, int dim, double tol) {
  Mat c = choi_matrix(s, dim);
  Mat ch = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(ch);
  std::vector<Mat> out;
  for (Eigen::Index k = 0; k < ch.rows(); ++k) {
    double lam = es.eigenvalues()(k);
    if (lam < -1e-9) throw std::runtime_error("kraus_from_superop: map is not CP");
    if (lam <= tol) continue;
    Vec v = es.eigenvectors().col(k) * std::sqrt(lam);
    // v = sum_i |i> (x) K|i>, so K(a, i) = v(i*dim + a).
    Mat kop(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int a = 0; a < dim; ++a) kop(a, i) = v(i * dim + a);
    out.push_back(kop);
  }
  return out;
}

Eigen::MatrixXd pauli_transfer_matrix(const Mat& s, int n_qubits) {
  auto ps = all_paulis(n_qubits);
  std::vector<Mat> mats;
  for (auto& p : ps) mats.push_back(pauli_matrix(p));
  int d = 1 << n_qubits;
  Eigen::MatrixXd r(ps.size(), ps.size());
  for (std::size_t q = 0; q < ps.size(); ++q) {
    Mat out = apply_superop(s, mats[q]);
    for (std::size_t p = 0; p < ps.size(); ++p)
      r(p, q) = (mats[p] * out).trace().real() / d;
  }
  return r;
}

Mat superop_from_ptm(const Eigen::MatrixXd& r, int n_qubits) {
  auto ps = all_paulis(n_qubits);
  int d = 1 << n_qubits;
  Mat s = Mat::Zero(d * d, d * d);
  for (std::size_t p = 0; p < ps.size(); ++p) {
    Vec vp = vec(pauli_matrix(ps[p]));
    for (std::size_t q = 0; q < ps.size(); ++q) {
      if (r(p, q) == 0) continue;
      Vec vq = vec(pauli_matrix(ps[q]));
      s += (r(p, q) / d) * vp * vq.adjoint();
    }
  }
  return s;
}

void write_matrix_binary(const std::string& path, const Mat& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write("RTFM", 4);
  std::int64_t rows = m.rows(), cols = m.cols();
  f.write(reinterpret_cast<const char*>(&rows), 8);
  f.write(reinterpret_cast<const char*>(&cols), 8);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double re = m(i, j).real(), im = m(i, j).imag();
      f.write(reinterpret_cast<const char*>(&re), 8);
      f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

Mat read_matrix_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (std::string(magic, 4) != "RTFM") throw std::runtime_error("bad matrix file");
  std::int64_t rows = 0, cols = 0;
  f.read(reinterpret_cast<char*>(&rows), 8);
  f.read(reinterpret_cast<char*>(&cols), 8);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re, im;
      f.read(reinterpret_cast<char*>(&re), 8);
      f.read(reinterpret_cast<char*>(&im), 8);
      m(i, j) = cplx(re, im);
    }
  if (!f) throw std::runtime_error("truncated matrix file");
  return m;
}

}  // namespace rotft

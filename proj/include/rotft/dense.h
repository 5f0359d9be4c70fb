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

#ifndef ROTFT_DENSE_H_
#define ROTFT_DENSE_H_

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotft/pauli.h"

namespace rotft {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Register conventions: subsystem 0 is the most significant digit of the
// basis index, i.e. operators compose with kron(A0, A1, ...).

Mat kron(const Mat& a, const Mat& b);
Mat kron_all(const std::vector<Mat>& ops);

Mat pauli_1q(char p);
Mat pauli_matrix(const PauliOperator& p);

// Embeds `op`, acting on `targets` (in that order), into the full register.
Mat embed_op(const Mat& op, const std::vector<int>& dims,
             const std::vector<int>& targets);

// <level| rho |level> on subsystem `sys`; the result lives on the remaining
// subsystems in their original order.
Mat project_subsystem(const Mat& rho, const std::vector<int>& dims, int sys,
                      int level);
// rho_rest (x) |level><level| placed at subsystem `sys`.
Mat attach_subsystem(const Mat& rho_rest, const std::vector<int>& dims, int sys,
                     int level);
Mat partial_trace(const Mat& rho, const std::vector<int>& dims, int sys);

double trace_norm(const Mat& a);
double hermiticity_error(const Mat& a);
// exp(-i H t) for Hermitian H.
Mat expm_hermitian(const Mat& h, double t);
Mat ket_bra(const Vec& a, const Vec& b);
Mat basis_proj(int dim, int level);

// Superoperators act on column-stacked vec(rho).
Vec vec(const Mat& rho);
Mat unvec(const Vec& v, int dim);
Mat superop_unitary(const Mat& u);
Mat superop_left_right(const Mat& a, const Mat& b);  // rho -> a rho b
Mat superop_from_kraus(const std::vector<Mat>& kraus);
Mat apply_superop(const Mat& s, const Mat& rho);
Mat choi_matrix(const Mat& s, int dim);
std::vector<Mat> kraus_from_superop(const Mat& s, int dim, double tol = 1e-14);
// Pauli transfer matrix R_{PQ} = Tr(P S(Q)) / 2^n in all_paulis order.
Eigen::MatrixXd pauli_transfer_matrix(const Mat& s, int n_qubits);
Mat superop_from_ptm(const Eigen::MatrixXd& r, int n_qubits);

// Row-major complex-pair binary dump: header "RTFM", int64 rows, int64 cols,
// then rows*cols (re, im) doubles, little-endian.
void write_matrix_binary(const std::string& path, const Mat& m);
Mat read_matrix_binary(const std::string& path);

}  // namespace rotft

#endif  // ROTFT_DENSE_H_

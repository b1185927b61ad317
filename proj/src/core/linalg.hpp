// Copyright 2026 The imlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace imlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

constexpr cplx kI{0.0, 1.0};

double max_abs(const Mat& a);

// ‖u†u − I‖_max
double unitarity_residual(const Mat& u);

// ‖a − a†‖_max
double hermiticity_residual(const Mat& a);

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

// exp(−i·angle·n·σ) for a unit axis n, in closed form.
Mat su2_exp(double angle, double nx, double ny, double nz);

Mat kron(const Mat& a, const Mat& b);

// Superoperator of X ↦ u X u† acting on row-major vec(X), i.e. u ⊗ conj(u).
Mat adjoint_superop(const Mat& u);

// Row-major vectorization helpers matching adjoint_superop.
Vec vec_rowmajor(const Mat& x);
Mat unvec_rowmajor(const Vec& v, int n);

struct Svd {
  Mat U;
  RVec S;
  Mat Vh;
};

// Thin SVD (LAPACK zgesdd, falls back to zgesvd on convergence failure).
Svd svd_thin(const Mat& a);

// All eigenvalues of a general complex matrix (LAPACK zgeev, Schur based).
// The input is consumed.
Vec eigenvalues_general(Mat&& a);

// Eigenvalues of a Hermitian matrix in ascending order.
RVec eigenvalues_hermitian(const Mat& a);

// Throws NotADensityMatrix unless rho is Hermitian, PSD and unit trace.
void require_density(const Mat& rho, double tol, const char* what);

}  // namespace imlab

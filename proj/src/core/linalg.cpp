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

#include "linalg.hpp"

#include <cmath>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "errors.hpp"

namespace imlab {

double max_abs(const Mat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double unitarity_residual(const Mat& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

double hermiticity_residual(const Mat& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return max_abs(a - a.adjoint());
}

Mat pauli_x() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

Mat pauli_y() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Mat pauli_z() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Mat su2_exp(double angle, double nx, double ny, double nz) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat m(2, 2);
  m(0, 0) = cplx(c, -s * nz);
  m(0, 1) = cplx(-s * ny, -s * nx);
  m(1, 0) = cplx(s * ny, -s * nx);
  m(1, 1) = cplx(c, s * nz);
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat adjoint_superop(const Mat& u) { return kron(u, u.conjugate()); }

Vec vec_rowmajor(const Mat& x) {
  Vec v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

Mat unvec_rowmajor(const Vec& v, int n) {
  Mat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = v(i * n + j);
  return x;
}

Svd svd_thin(const Mat& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Svd out;
  out.U.resize(m, k);
  out.S.resize(k);
  out.Vh.resize(k, n);
  if (k == 0) return out;
  Mat work = a;
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m,
                                   out.S.data(), out.U.data(), m,
                                   out.Vh.data(), k);
  if (info > 0) {
    work = a;
    std::vector<double> superb(static_cast<size_t>(k));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, work.data(), m,
                          out.S.data(), out.U.data(), m, out.Vh.data(), k,
                          superb.data());
  }
  if (info != 0)
    fail(ErrorKind::NumericalFailure, "SVD failed, info=" + std::to_string(info));
  return out;
}

Vec eigenvalues_general(Mat&& a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Vec w(n);
  if (n == 0) return w;
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n,
                                  w.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    fail(ErrorKind::NumericalFailure,
         "zgeev failed, info=" + std::to_string(info));
  return w;
}

RVec eigenvalues_hermitian(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::NumericalFailure, "Hermitian eigensolver failed");
  return es.eigenvalues();
}

void require_density(const Mat& rho, double tol, const char* what) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    fail(ErrorKind::NotADensityMatrix, std::string(what) + ": not square");
  if (hermiticity_residual(rho) > tol)
    fail(ErrorKind::NotADensityMatrix, std::string(what) + ": not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > tol)
    fail(ErrorKind::NotADensityMatrix, std::string(what) + ": trace != 1");
  Mat h = 0.5 * (rho + rho.adjoint());
  if (eigenvalues_hermitian(h).minCoeff() < -tol)
    fail(ErrorKind::NotADensityMatrix, std::string(what) + ": not PSD");
}

}  // namespace imlab

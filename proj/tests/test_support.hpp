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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace imlab::testing {

inline Vec ket(int q, int k) {
  Vec v = Vec::Zero(q);
  v(k) = 1.0;
  return v;
}

inline Vec plus_ket(int q) {
  return Vec::Constant(q, cplx(1.0 / std::sqrt(double(q))));
}

inline Mat proj(const Vec& v) { return v * v.adjoint(); }

// Gaussian vectors and matrices from a test-local generator, independent of
// the library samplers.
inline Vec random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
  return v / v.norm();
}

inline Mat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<Mat> qr(z);
  Mat qm = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) qm.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return qm;
}

inline Mat random_density(int n, std::mt19937_64& rng) {
  Mat g(n, n);
  std::normal_distribution<double> nd;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cplx(nd(rng), nd(rng));
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

// Kind of the imlab::Error thrown by f, or -1 when f returns normally.
template <class F>
int error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.kind());
  }
  return -1;
}

inline int kind(ErrorKind k) { return static_cast<int>(k); }

}  // namespace imlab::testing

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

#include "group.hpp"

#include <cmath>
#include <random>

#include "errors.hpp"

namespace imlab {

namespace {

constexpr double kSignificant = 1e-12;

std::array<double, 4> canonical_quat(std::array<double, 4> v) {
  const double n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
  if (!(n2 > 0.0)) fail(ErrorKind::NumericalFailure, "zero quaternion");
  if (std::abs(n2 - 1.0) > 1e-15) {
    const double n = std::sqrt(n2);
    for (double& c : v) c /= n;
  }
  for (double c : v) {
    if (std::abs(c) > kSignificant) {
      if (c < 0)
        for (double& d : v) d = -d;
      break;
    }
  }
  return v;
}

std::array<double, 4> quat_of_su2(const Mat& m) {
  return {0.5 * (m(0, 0) + m(1, 1)).real(),
          -0.5 * (m(0, 1) + m(1, 0)).imag(),
          0.5 * (m(1, 0) - m(0, 1)).real(),
          0.5 * (m(1, 1) - m(0, 0)).imag()};
}

std::array<double, 4> hamilton(const std::array<double, 4>& a,
                               const std::array<double, 4>& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + b[0] * a[1] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] + b[0] * a[2] + a[3] * b[1] - a[1] * b[3],
          a[0] * b[3] + b[0] * a[3] + a[1] * b[2] - a[2] * b[1]};
}

// Four normalized real projections of a q > 2 representative, each
// 1-Lipschitz in the max norm.
std::array<double, 4> matrix_coords(const Mat& m) {
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    double norm = 0, acc = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double w = std::cos(1.0 + 0.7 * k + 1.3 * static_cast<double>(i));
      norm += std::abs(w);
      acc += w * ((k & 1) ? m.data()[i].imag() : m.data()[i].real());
    }
    out[static_cast<size_t>(k)] = acc / norm;
  }
  return out;
}

}  // namespace

Mat GroupElement::rep() const {
  if (q_ != 2) return mat_;
  const auto& v = quat_;
  Mat m(2, 2);
  m(0, 0) = cplx(v[0], -v[3]);
  m(0, 1) = cplx(-v[2], -v[1]);
  m(1, 0) = cplx(v[2], -v[1]);
  m(1, 1) = cplx(v[0], v[3]);
  return m;
}

GroupElement GroupElement::identity(int q) {
  if (q < 2) fail(ErrorKind::DimensionMismatch, "q must be >= 2");
  GroupElement g;
  g.q_ = q;
  if (q > 2) g.mat_ = Mat::Identity(q, q);
  return g;
}

GroupElement GroupElement::from_quaternion(double w, double x, double y,
                                           double z) {
  GroupElement g;
  g.quat_ = canonical_quat({w, x, y, z});
  return g;
}

GroupElement GroupElement::from_special_matrix(Mat m) {
  const int q = static_cast<int>(m.rows());
  GroupElement g;
  g.q_ = q;
  if (q == 2) {
    g.quat_ = canonical_quat(quat_of_su2(m));
    return g;
  }
  // Choose the centre element ω^k putting the first significant entry's
  // argument into (−π/q, π/q].
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (std::abs(z) > kSignificant) {
      const double arg = std::arg(z);
      const double step = 2.0 * M_PI / q;
      const double k = std::ceil((arg - M_PI / q) / step - 1e-15);
      if (k != 0.0) m *= std::polar(1.0, -k * step);
      break;
    }
  }
  g.mat_ = m;
  return g;
}

GroupElement project_to_group(const Mat& u) {
  if (u.rows() != u.cols() || u.rows() < 2)
    fail(ErrorKind::DimensionMismatch, "group element must be square, q >= 2");
  const double r = unitarity_residual(u);
  if (!(r <= 1e-8))
    fail(ErrorKind::NonUnitary, "residual " + std::to_string(r));
  const int q = static_cast<int>(u.rows());
  const cplx det = u.determinant();
  const cplx root = std::polar(1.0, std::arg(det) / q);
  return GroupElement::from_special_matrix(u / root);
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.q() != b.q()) fail(ErrorKind::DimensionMismatch, "q mismatch");
  if (a.q() == 2) {
    GroupElement g;
    g.quat_ = canonical_quat(hamilton(a.quat_, b.quat_));
    return g;
  }
  return GroupElement::from_special_matrix(a.mat_ * b.mat_);
}

GroupElement inverse(const GroupElement& g) {
  if (g.q() == 2)
    return GroupElement::from_quaternion(g.quat_[0], -g.quat_[1], -g.quat_[2],
                                         -g.quat_[3]);
  return GroupElement::from_special_matrix(g.mat_.adjoint());
}

double distance(const GroupElement& a, const GroupElement& b) {
  if (a.q() != 2 || b.q() != 2)
    fail(ErrorKind::UnsupportedDimension, "distance is defined for q = 2");
  // Relative quaternion a⁻¹b without canonicalization.
  const auto& p = a.quat();
  const auto r = hamilton({p[0], -p[1], -p[2], -p[3]}, b.quat());
  const double vn = std::sqrt(r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
  return 2.0 * std::atan2(vn, std::abs(r[0]));
}

double killing_distance(const GroupElement& a, const GroupElement& b) {
  return distance(a, b) / std::sqrt(2.0);
}

bool nearly_equal(const GroupElement& a, const GroupElement& b, double tol) {
  if (a.q() != b.q()) return false;
  if (a.q() == 2) {
    double dp = 0, dm = 0;
    for (int i = 0; i < 4; ++i) {
      dp = std::max(dp, std::abs(a.quat()[i] - b.quat()[i]));
      dm = std::max(dm, std::abs(a.quat()[i] + b.quat()[i]));
    }
    return std::min(dp, dm) <= tol;
  }
  const Mat ra = a.rep(), rb = b.rep();
  const int q = a.q();
  for (int k = 0; k < q; ++k)
    if (max_abs(ra - std::polar(1.0, 2.0 * M_PI * k / q) * rb) <= tol)
      return true;
  return false;
}

bool identical(const GroupElement& a, const GroupElement& b) {
  if (a.q() != b.q()) return false;
  if (a.q() == 2) return a.quat() == b.quat();
  return a.rep() == b.rep();
}

Mat sample_haar_unitary(int q, std::uint64_t seed) {
  if (q < 2) fail(ErrorKind::DimensionMismatch, "q must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat z(q, q);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < q; ++i) {
      const double re = normal(rng), im = normal(rng);
      z(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat Q = qr.householderQ() * Mat::Identity(q, q);
  const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < q; ++j) {
    const cplx d = R(j, j);
    if (std::abs(d) > 0) Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

GroupElement sample_haar(int q, std::uint64_t seed) {
  return project_to_group(sample_haar_unitary(q, seed));
}

// GroupIndex

size_t GroupIndex::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::int64_t c : k) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return static_cast<size_t>(h);
}

GroupIndex::GroupIndex(int q, double tol) : q_(q), tol_(tol), res_(4 * tol) {
  if (!(tol > 0)) fail(ErrorKind::InvalidArgument, "tolerance must be > 0");
}

std::array<double, 4> GroupIndex::coords(const GroupElement& g) const {
  if (q_ == 2) return g.quat();
  return matrix_coords(g.rep());
}

GroupIndex::Key GroupIndex::key_of(const std::array<double, 4>& v) const {
  Key k;
  for (int i = 0; i < 4; ++i)
    k[static_cast<size_t>(i)] = static_cast<std::int64_t>(std::floor(v[i] / res_));
  return k;
}

void GroupIndex::candidate_keys(const std::array<double, 4>& v,
                                std::vector<Key>& out) const {
  std::array<std::array<std::int64_t, 3>, 4> opts;
  std::array<int, 4> nopt{};
  for (int i = 0; i < 4; ++i) {
    const double f = v[i] / res_;
    const double c = std::floor(f);
    const double frac = f - c;
    auto& o = opts[static_cast<size_t>(i)];
    int n = 0;
    o[n++] = static_cast<std::int64_t>(c);
    if (frac < 0.25 + 1e-9) o[n++] = static_cast<std::int64_t>(c) - 1;
    if (frac > 0.75 - 1e-9) o[n++] = static_cast<std::int64_t>(c) + 1;
    nopt[static_cast<size_t>(i)] = n;
  }
  for (int a = 0; a < nopt[0]; ++a)
    for (int b = 0; b < nopt[1]; ++b)
      for (int c = 0; c < nopt[2]; ++c)
        for (int d = 0; d < nopt[3]; ++d)
          out.push_back({opts[0][a], opts[1][b], opts[2][c], opts[3][d]});
}

std::optional<size_t> GroupIndex::find(const GroupElement& g) const {
  if (g.q() != q_) fail(ErrorKind::DimensionMismatch, "q mismatch");
  std::vector<std::array<double, 4>> reps;
  if (q_ == 2) {
    const auto& v = g.quat();
    reps.push_back(v);
    reps.push_back({-v[0], -v[1], -v[2], -v[3]});
  } else {
    const Mat m = g.rep();
    for (int k = 0; k < q_; ++k)
      reps.push_back(matrix_coords(std::polar(1.0, 2.0 * M_PI * k / q_) * m));
  }
  std::vector<Key> keys;
  for (const auto& v : reps) candidate_keys(v, keys);
  std::optional<size_t> best;
  for (const Key& k : keys) {
    auto it = cells_.find(k);
    if (it == cells_.end()) continue;
    for (std::uint32_t idx : it->second)
      if (nearly_equal(elems_[idx], g, tol_) && (!best || idx < *best))
        best = idx;
  }
  return best;
}

std::pair<size_t, bool> GroupIndex::insert(const GroupElement& g) {
  if (auto f = find(g)) return {*f, false};
  const size_t idx = elems_.size();
  elems_.push_back(g);
  cells_[key_of(coords(g))].push_back(static_cast<std::uint32_t>(idx));
  return {idx, true};
}

}  // namespace imlab

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

#include "chain.hpp"

#include <cmath>

#include "errors.hpp"
#include "mps.hpp"

namespace imlab {

DenseState::DenseState(size_t max_bytes) : max_bytes_(max_bytes) {
  amp_ = Vec::Ones(1);
}

void DenseState::check_size(size_t n) const {
  if (n > max_bytes_ / sizeof(cplx))
    fail(ErrorKind::TooLarge, "state vector of " + std::to_string(n) +
                                  " amplitudes exceeds the memory cap");
}

size_t DenseState::append(const Vec& v, const std::vector<int>& dims) {
  size_t d = 1;
  for (int x : dims) d *= static_cast<size_t>(x);
  if (static_cast<size_t>(v.size()) != d)
    fail(ErrorKind::DimensionMismatch, "appended vector size mismatch");
  check_size(size() * d);
  Vec out(static_cast<Eigen::Index>(size() * d));
  for (size_t i = 0; i < size(); ++i)
    out.segment(static_cast<Eigen::Index>(i * d), static_cast<Eigen::Index>(d)) = amp_(static_cast<Eigen::Index>(i)) * v;
  amp_ = std::move(out);
  const size_t first = dims_.size();
  dims_.insert(dims_.end(), dims.begin(), dims.end());
  return first;
}

size_t DenseState::append_mixed(const Mat& rho, const std::vector<int>& dims) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > 1e-14) keep.push_back(k);
  if (keep.size() == 1) {
    const Eigen::Index k = keep.front();
    return append(es.eigenvectors().col(k) * std::sqrt(es.eigenvalues()(k)), dims);
  }
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index d = rho.rows();
  Vec v = Vec::Zero(d * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Eigen::Index k = keep[static_cast<size_t>(j)];
    const Vec col = es.eigenvectors().col(k) * std::sqrt(es.eigenvalues()(k));
    for (Eigen::Index i = 0; i < d; ++i) v(i * r + j) = col(i);
  }
  std::vector<int> all = dims;
  all.push_back(static_cast<int>(r));
  return append(v, all);
}

void DenseState::apply(const Mat& op, const std::vector<size_t>& slots) {
  const size_t N = size();
  std::vector<size_t> stride(dims_.size());
  size_t s = 1;
  for (size_t i = dims_.size(); i-- > 0;) {
    stride[i] = s;
    s *= static_cast<size_t>(dims_[i]);
  }
  size_t D = 1;
  for (size_t sl : slots) D *= static_cast<size_t>(dims_.at(sl));
  if (static_cast<size_t>(op.rows()) != D || static_cast<size_t>(op.cols()) != D)
    fail(ErrorKind::DimensionMismatch, "operator does not match slot dimensions");
  std::vector<size_t> offset(D);
  for (size_t j = 0; j < D; ++j) {
    size_t rem = j, off = 0;
    for (size_t k = slots.size(); k-- > 0;) {
      const size_t d = static_cast<size_t>(dims_[slots[k]]);
      off += (rem % d) * stride[slots[k]];
      rem /= d;
    }
    offset[j] = off;
  }
  Vec in(static_cast<Eigen::Index>(D)), out(static_cast<Eigen::Index>(D));
  for (size_t base = 0; base < N; ++base) {
    bool is_base = true;
    for (size_t sl : slots)
      if ((base / stride[sl]) % static_cast<size_t>(dims_[sl]) != 0) {
        is_base = false;
        break;
      }
    if (!is_base) continue;
    for (size_t j = 0; j < D; ++j) in(static_cast<Eigen::Index>(j)) = amp_(static_cast<Eigen::Index>(base + offset[j]));
    out.noalias() = op * in;
    for (size_t j = 0; j < D; ++j) amp_(static_cast<Eigen::Index>(base + offset[j])) = out(static_cast<Eigen::Index>(j));
  }
}

void DenseState::dilate(const std::vector<Mat>& kraus, size_t slot) {
  const size_t r = kraus.size();
  if (r == 1) {
    apply(kraus.front(), {slot});
    return;
  }
  check_size(size() * r);
  Vec out(static_cast<Eigen::Index>(size() * r));
  const Vec orig = amp_;
  for (size_t i = 0; i < r; ++i) {
    amp_ = orig;
    apply(kraus[i], {slot});
    for (Eigen::Index k = 0; k < orig.size(); ++k) out(k * static_cast<Eigen::Index>(r) + static_cast<Eigen::Index>(i)) = amp_(k);
  }
  amp_ = std::move(out);
  dims_.push_back(static_cast<int>(r));
}

cplx DenseState::inner(const DenseState& other, const Mat& op, size_t slot) const {
  if (other.dims_ != dims_) fail(ErrorKind::DimensionMismatch, "slot layout differs");
  DenseState tmp = other;
  tmp.apply(op, {slot});
  return amp_.dot(tmp.amp_);
}

Mat DenseState::reduced(const std::vector<size_t>& slots) const {
  std::vector<size_t> stride(dims_.size());
  size_t s = 1;
  for (size_t i = dims_.size(); i-- > 0;) {
    stride[i] = s;
    s *= static_cast<size_t>(dims_[i]);
  }
  size_t D = 1;
  for (size_t sl : slots) D *= static_cast<size_t>(dims_.at(sl));
  const size_t rest = size() / D;
  // Amplitudes arranged as D × rest.
  Mat m(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(rest));
  std::vector<size_t> count(D, 0);
  for (size_t i = 0; i < size(); ++i) {
    size_t row = 0;
    for (size_t sl : slots)
      row = row * static_cast<size_t>(dims_[sl]) + (i / stride[sl]) % static_cast<size_t>(dims_[sl]);
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(count[row]++)) =
        amp_(static_cast<Eigen::Index>(i));
  }
  return m * m.adjoint();
}

cplx brute_force_two_point(const ControlledGateSet& gs, const BathState& state,
                           const Mat& rho_imp,
                           const std::vector<QuantumChannel>& channels,
                           const Mat& O_prime, const Mat& obs, int T,
                           const ChainOptions& opt) {
  const int q = gs.q();
  if (T < 0) fail(ErrorKind::InvalidArgument, "T must be >= 0");
  if (state.q() != q || rho_imp.rows() != q || obs.rows() != q || O_prime.rows() != q)
    fail(ErrorKind::DimensionMismatch, "dimension mismatch");
  require_channels(channels, T, q);
  if (T == 0) return (obs * O_prime * rho_imp).trace();
  require_density(rho_imp, 1e-10, "rho_imp");

  const int half = T + opt.extra_pairs;  // leftmost site is −2·half
  const int L = 2 * half + 1;
  // slot_of[p + 2·half] = slot index of chain position p
  std::vector<size_t> slot_of(static_cast<size_t>(L));
  auto pos = [&](int p) -> size_t& { return slot_of[static_cast<size_t>(p + 2 * half)]; };
  DenseState psi(opt.max_bytes);
  pos(-2 * half) = psi.append_mixed(state.even_marginal(), {q});
  for (int j = half - 1; j >= 1; --j) {
    const size_t first = psi.append_mixed(state.density(), {q, q});
    pos(-2 * j - 1) = first;
    pos(-2 * j) = first + 1;
  }
  Mat odd = Mat::Zero(q, q);  // Tr_even of the pair state
  for (int a = 0; a < q; ++a)
    for (int ap = 0; ap < q; ++ap)
      for (int e = 0; e < q; ++e) odd(a, ap) += state.density()(a * q + e, ap * q + e);
  pos(-1) = psi.append_mixed(odd, {q});
  pos(0) = psi.append_mixed(rho_imp, {q});

  const bool two_point = max_abs(O_prime - Mat::Identity(q, q)) > 0;
  DenseState phi = psi;
  if (two_point) phi.apply(O_prime, {pos(0)});

  const Mat& U = gs.two_qudit();
  for (int t = 1; t <= T; ++t) {
    for (int p = -2 * half; p <= -2; p += 2) {
      psi.apply(U, {pos(p), pos(p + 1)});
      if (two_point) phi.apply(U, {pos(p), pos(p + 1)});
    }
    for (int p = -2 * half + 1; p <= -1; p += 2) {
      psi.apply(U, {pos(p), pos(p + 1)});
      if (two_point) phi.apply(U, {pos(p), pos(p + 1)});
    }
    if (t < T) {
      const auto& k = channels[static_cast<size_t>(t - 1)].kraus;
      psi.dilate(k, pos(0));
      if (two_point) phi.dilate(k, pos(0));
    }
  }
  return psi.inner(two_point ? phi : psi, obs, pos(0));
}

double brute_force_observable(const ControlledGateSet& gs, const BathState& state,
                              const Mat& rho_imp,
                              const std::vector<QuantumChannel>& channels,
                              const Mat& obs, int T, const ChainOptions& opt) {
  require_density(rho_imp, 1e-10, "rho_imp");
  return brute_force_two_point(gs, state, rho_imp, channels,
                               Mat::Identity(gs.q(), gs.q()), obs, T, opt)
      .real();
}

}  // namespace imlab

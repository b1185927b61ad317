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

#include "mps.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace imlab {

int TemporalMps::bond_dim(int t) const {
  if (t < 0 || t > T()) fail(ErrorKind::InvalidArgument, "cut out of range");
  if (t == 0) return sites.front().left;
  return sites[static_cast<size_t>(t - 1)].right;
}

Tensor3 TemporalMps::folded_site(int t) const {
  const Tensor3& s = sites.at(static_cast<size_t>(t - 1));
  Tensor3 out(s.left, q * q * q * q, s.right);
  for (int l = 0; l < s.left; ++l)
    for (int a = 0; a < q; ++a)
      for (int bb = 0; bb < q * q; ++bb)
        for (int r = 0; r < s.right; ++r)
          out(l, (a * q + a) * q * q + bb, r) = s(l, a * q * q + bb, r);
  return out;
}

cplx contract_identity_process(const TemporalMps& mps) {
  const int q = mps.q;
  Vec v = Vec::Ones(mps.sites.front().left);
  for (const Tensor3& s : mps.sites) {
    Vec nv = Vec::Zero(s.right);
    for (int l = 0; l < s.left; ++l) {
      if (v(l) == cplx(0)) continue;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int r = 0; r < s.right; ++r)
            nv(r) += v(l) * s(l, (a * q + b) * q + b, r) / static_cast<double>(q);
    }
    v = std::move(nv);
  }
  return v.sum();
}

Vec to_dense(const TemporalMps& mps, size_t max_entries) {
  const size_t P = static_cast<size_t>(mps.phys());
  size_t total = 1;
  for (int t = 0; t < mps.T(); ++t) {
    total *= P;
    if (total > max_entries)
      fail(ErrorKind::TooLarge, "dense IM vector exceeds cap");
  }
  if (mps.sites.front().left != 1)
    fail(ErrorKind::InvalidArgument, "open left boundary");
  // rows: accumulated physical index, cols: current bond
  RowMat acc = RowMat::Ones(1, 1);
  for (const Tensor3& s : mps.sites) {
    RowMat next(acc.rows() * s.phys, s.right);
    const auto w = s.right_matrix();  // left × (phys·right)
    RowMat prod = acc * w;            // rows × (phys·right)
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (int p = 0; p < s.phys; ++p)
        next.row(i * s.phys + p) = prod.block(i, static_cast<Eigen::Index>(p) * s.right, 1, s.right);
    acc = std::move(next);
  }
  Vec out(acc.rows());
  for (Eigen::Index i = 0; i < acc.rows(); ++i) out(i) = acc.row(i).sum();
  return out;
}

namespace {

struct Qr {
  Mat Q;
  Mat R;
};

Qr thin_qr(const Mat& a) {
  const Eigen::Index m = a.rows(), n = a.cols(), k = std::min(m, n);
  Eigen::HouseholderQR<Mat> qr(a);
  Qr out;
  out.Q = qr.householderQ() * Mat::Identity(m, k);
  out.R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return out;
}

Tensor3 from_left_matrix(const Mat& m, int left, int phys) {
  Tensor3 t(left, phys, static_cast<int>(m.cols()));
  t.left_matrix() = m;
  return t;
}

Tensor3 from_right_matrix(const Mat& m, int phys, int right) {
  Tensor3 t(static_cast<int>(m.rows()), phys, right);
  t.right_matrix() = m;
  return t;
}

void left_canonicalize(std::vector<Tensor3>& s) {
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    const Qr qr = thin_qr(Mat(s[i].left_matrix()));
    const int left = s[i].left, phys = s[i].phys;
    s[i] = from_left_matrix(qr.Q, left, phys);
    const Mat next = qr.R * Mat(s[i + 1].right_matrix());
    s[i + 1] = from_right_matrix(next, s[i + 1].phys, s[i + 1].right);
  }
}

}  // namespace

double vector_norm(const TemporalMps& mps) {
  // ⟨ψ|ψ⟩ by transfer matrices.
  Mat e = Mat::Identity(mps.sites.front().left, mps.sites.front().left);
  for (const Tensor3& s : mps.sites) {
    Mat ne = Mat::Zero(s.right, s.right);
    for (int p = 0; p < s.phys; ++p) {
      Mat a(s.left, s.right);
      for (int l = 0; l < s.left; ++l)
        for (int r = 0; r < s.right; ++r) a(l, r) = s(l, p, r);
      ne += a.adjoint() * e * a;
    }
    e = std::move(ne);
  }
  return std::sqrt(std::max(0.0, e.trace().real()));
}

CompressResult compress(const TemporalMps& mps, int chi_max, double cutoff) {
  if (chi_max < 1) fail(ErrorKind::InvalidArgument, "chi_max must be >= 1");
  CompressResult res;
  res.mps.q = mps.q;
  res.mps.sites = mps.sites;
  auto& s = res.mps.sites;
  const int T = mps.T();
  res.discarded.assign(static_cast<size_t>(std::max(0, T - 1)), 0.0);
  if (T < 2) return res;
  left_canonicalize(s);
  for (int i = T - 1; i >= 1; --i) {
    Tensor3& cur = s[static_cast<size_t>(i)];
    const Svd svd = svd_thin(Mat(cur.right_matrix()));
    const Eigen::Index n = svd.S.size();
    Eigen::Index keep = 0;
    const double s0 = n > 0 ? svd.S(0) : 0.0;
    while (keep < n && keep < chi_max && svd.S(keep) > cutoff * s0) ++keep;
    if (keep == 0) keep = 1;
    const double tot = svd.S.squaredNorm();
    const double disc = svd.S.tail(n - keep).squaredNorm();
    res.discarded[static_cast<size_t>(i - 1)] = tot > 0 ? disc / tot : 0.0;
    const int phys = cur.phys, right = cur.right;
    cur = from_right_matrix(svd.Vh.topRows(keep), phys, right);
    Tensor3& prev = s[static_cast<size_t>(i - 1)];
    const Mat us = svd.U.leftCols(keep) * svd.S.head(keep).asDiagonal();
    const Mat np = Mat(prev.left_matrix()) * us;
    prev = from_left_matrix(np, prev.left, prev.phys);
  }
  return res;
}

TeeProfile temporal_entanglement(const TemporalMps& mps, int chi_used) {
  const int T = mps.T();
  if (T < 1) fail(ErrorKind::InvalidArgument, "empty IM");
  if (mps.sites.front().left != 1)
    fail(ErrorKind::InvalidArgument, "open left boundary");
  TeeProfile prof;
  prof.T = T;
  prof.chi_used = chi_used;
  std::vector<Tensor3> s = mps.sites;
  left_canonicalize(s);
  const double norm = Eigen::Map<const Vec>(s.back().data.data(),
                                           static_cast<Eigen::Index>(s.back().data.size()))
                          .norm();
  if (!(norm >= 1e-14)) fail(ErrorKind::DegenerateNorm, "IM norm below 1e-14");
  for (auto& x : s.back().data) x /= norm;
  prof.per_cut_entropy.assign(static_cast<size_t>(std::max(0, T - 1)), 0.0);
  prof.schmidt_rank.assign(static_cast<size_t>(std::max(0, T - 1)), 1);
  for (int i = T - 1; i >= 1; --i) {
    Tensor3& cur = s[static_cast<size_t>(i)];
    const Svd svd = svd_thin(Mat(cur.right_matrix()));
    const double tot = svd.S.squaredNorm();
    double ent = 0;
    int rank = 0;
    for (Eigen::Index k = 0; k < svd.S.size(); ++k) {
      const double p = svd.S(k) * svd.S(k) / tot;
      if (p > 0) ent -= p * std::log(p);
      if (svd.S(k) > 1e-12 * svd.S(0)) ++rank;
    }
    prof.per_cut_entropy[static_cast<size_t>(i - 1)] = std::max(0.0, ent);
    prof.schmidt_rank[static_cast<size_t>(i - 1)] = rank;
    const int phys = cur.phys, right = cur.right;
    cur = from_right_matrix(svd.Vh, phys, right);
    Tensor3& prev = s[static_cast<size_t>(i - 1)];
    const Mat np = Mat(prev.left_matrix()) * (svd.U * svd.S.asDiagonal());
    prev = from_left_matrix(np, prev.left, prev.phys);
  }
  for (size_t c = 0; c < prof.per_cut_entropy.size(); ++c) {
    if (prof.per_cut_entropy[c] > prof.max_entropy) {
      prof.max_entropy = prof.per_cut_entropy[c];
      prof.argmax_cut = static_cast<int>(c) + 1;
    }
  }
  return prof;
}

void require_channels(const std::vector<QuantumChannel>& channels, int T,
                      int q) {
  if (static_cast<int>(channels.size()) != std::max(0, T - 1))
    fail(ErrorKind::InvalidArgument, "expected T-1 channels");
  for (const auto& c : channels) {
    if (c.kraus.empty() || c.q() != q)
      fail(ErrorKind::DimensionMismatch, "channel dimension mismatch");
    const double r = trace_preservation_residual(c.kraus);
    if (!(r <= 1e-8))
      fail(ErrorKind::NonTracePreserving,
           "channel " + c.label + " residual " + std::to_string(r));
  }
}

cplx contract_with_process_complex(const TemporalMps& mps, const Mat& rho,
                                   const std::vector<QuantumChannel>& channels,
                                   const Mat& obs) {
  const int q = mps.q, T = mps.T();
  require_channels(channels, T, q);
  if (rho.rows() != q || obs.rows() != q)
    fail(ErrorKind::DimensionMismatch, "impurity operators must be q x q");
  if (mps.sites.front().left != 1)
    fail(ErrorKind::InvalidArgument, "open left boundary");
  std::vector<Mat> x(1, rho);
  for (int t = 0; t < T; ++t) {
    const Tensor3& s = mps.sites[static_cast<size_t>(t)];
    std::vector<Mat> y(static_cast<size_t>(s.right), Mat::Zero(q, q));
    for (int l = 0; l < s.left; ++l)
      for (int a = 0; a < q; ++a) {
        const cplx w = x[static_cast<size_t>(l)](a, a);
        if (w == cplx(0)) continue;
        for (int b = 0; b < q; ++b)
          for (int bp = 0; bp < q; ++bp)
            for (int r = 0; r < s.right; ++r)
              y[static_cast<size_t>(r)](b, bp) += w * s(l, (a * q + b) * q + bp, r);
      }
    if (t + 1 < T)
      for (Mat& m : y) m = channels[static_cast<size_t>(t)].apply(m);
    x = std::move(y);
  }
  cplx out = 0;
  for (const Mat& m : x) out += (obs * m).trace();
  return out;
}

double contract_with_process(const TemporalMps& mps, const Mat& rho_imp,
                             const std::vector<QuantumChannel>& channels,
                             const Mat& obs) {
  require_density(rho_imp, 1e-10, "rho_imp");
  return contract_with_process_complex(mps, rho_imp, channels, obs).real();
}

std::string tee_csv(const std::vector<TeeProfile>& profiles, bool header) {
  std::ostringstream os;
  os.precision(17);
  if (header) os << "T,cut,entropy_nats,max_entropy_nats,chi\n";
  for (const auto& p : profiles) {
    const std::string chi = p.chi_used < 0 ? "exact" : std::to_string(p.chi_used);
    if (p.per_cut_entropy.empty()) os << p.T << ",0,0," << p.max_entropy << ',' << chi << '\n';
    for (size_t c = 0; c < p.per_cut_entropy.size(); ++c)
      os << p.T << ',' << c + 1 << ',' << p.per_cut_entropy[c] << ','
         << p.max_entropy << ',' << chi << '\n';
  }
  return os.str();
}

}  // namespace imlab

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

#include "lightcone.hpp"

#include "errors.hpp"
#include "influence.hpp"

namespace imlab {

namespace {

// X ↦ V X V† on a q×q block indexed (o, o').
Mat conjugated(const Mat& v, const Mat& x) { return v * x * v.adjoint(); }

// Adds the odd site carrying the open index c. Input: even-type IM whose
// leg t receives x_t; output: odd-type IM whose leg t receives b_t, with
// x_1 = c (new left boundary) and x_t = b_{t−1} carried on the bond.
TemporalMps add_odd_site(const TemporalMps& ev, const ControlledGateSet& gs) {
  const int q = gs.q(), S = ev.T();
  if (ev.sites.front().left != 1)
    fail(ErrorKind::InvalidArgument, "even-type IM must have a closed left edge");
  std::vector<std::vector<Mat>> vv(static_cast<size_t>(q));  // V[b][x] = u_b u_x
  for (int b = 0; b < q; ++b)
    for (int x = 0; x < q; ++x) vv[static_cast<size_t>(b)].push_back(gs.u(b) * gs.u(x));
  TemporalMps od;
  od.q = q;
  for (int t = 1; t <= S; ++t) {
    const Tensor3& o = ev.sites[static_cast<size_t>(t - 1)];
    const bool last = t == S;
    const int L = o.left * q;
    const int R = last ? o.right : o.right * q;
    Tensor3 n(L, q * q * q, R);
    Mat blk(q, q);
    for (int l = 0; l < o.left; ++l)
      for (int x = 0; x < q; ++x)
        for (int r = 0; r < o.right; ++r) {
          for (int e = 0; e < q; ++e)
            for (int ep = 0; ep < q; ++ep) blk(e, ep) = o(l, (x * q + e) * q + ep, r);
          if (blk.cwiseAbs().maxCoeff() == 0.0) continue;
          const int li = t == 1 ? x * o.left + l : l * q + x;
          for (int b = 0; b < q; ++b) {
            const Mat out = conjugated(vv[static_cast<size_t>(b)][static_cast<size_t>(x)], blk);
            const int ri = last ? r : r * q + b;
            for (int e = 0; e < q; ++e)
              for (int ep = 0; ep < q; ++ep) n(li, (b * q + e) * q + ep, ri) += out(e, ep);
          }
        }
    od.sites.push_back(std::move(n));
  }
  return od;
}

// Adds the even partner of the open odd index: the new first leg hands over
// the conditional state σ_c and the remaining legs shift by one step.
TemporalMps add_even_site(const TemporalMps& od, const BathState& state) {
  const int q = state.q(), S = od.T();
  if (od.sites.front().left != q)
    fail(ErrorKind::InvalidArgument, "odd-type IM must expose the open odd index");
  TemporalMps ev;
  ev.q = q;
  Tensor3 first(1, q * q * q, q * q);
  for (int c = 0; c < q; ++c) {
    const Mat sigma = state.even_given_odd(c);
    for (int v = 0; v < q; ++v)
      for (int e = 0; e < q; ++e)
        for (int ep = 0; ep < q; ++ep) first(0, (v * q + e) * q + ep, c * q + v) = sigma(e, ep);
  }
  ev.sites.push_back(std::move(first));
  for (int t = 2; t <= S + 1; ++t) {
    const Tensor3& o = od.sites[static_cast<size_t>(t - 2)];
    const bool last = t == S + 1;
    const int R = last ? o.right : o.right * q;
    Tensor3 n(o.left * q, q * q * q, R);
    for (int l = 0; l < o.left; ++l)
      for (int vp = 0; vp < q; ++vp)
        for (int ee = 0; ee < q * q; ++ee)
          for (int r = 0; r < o.right; ++r) {
            const cplx val = o(l, vp * q * q + ee, r);
            if (val == cplx(0)) continue;
            for (int v = 0; v < q; ++v) n(l * q + vp, v * q * q + ee, last ? r : r * q + v) = val;
          }
    ev.sites.push_back(std::move(n));
  }
  return ev;
}

// Contracts the open odd index with the odd-site marginal.
TemporalMps close_odd(const TemporalMps& od, const BathState& state) {
  const RVec p = state.odd_probabilities();
  TemporalMps im = od;
  const Tensor3& f = od.sites.front();
  Tensor3 n(1, f.phys, f.right);
  for (int c = 0; c < f.left; ++c)
    for (int ph = 0; ph < f.phys; ++ph)
      for (int r = 0; r < f.right; ++r) n(0, ph, r) += p(c) * f(c, ph, r);
  im.sites.front() = std::move(n);
  return im;
}

}  // namespace

TemporalMps grow_im_truncated(
    const ControlledGateSet& gs, const BathState& state, int T, int chi_max,
    double cutoff,
    const std::function<void(int horizon, const TemporalMps& im)>& visit) {
  if (T < 1) fail(ErrorKind::InvalidArgument, "T must be >= 1");
  if (chi_max < 1) fail(ErrorKind::InvalidArgument, "chi_max must be >= 1");
  if (state.q() != gs.q()) fail(ErrorKind::DimensionMismatch, "state dimension != q");
  const int q = gs.q();
  // Far edge: one even site emitting the even marginal whatever it receives.
  TemporalMps ev;
  ev.q = q;
  {
    const Mat rho_e = state.even_marginal();
    Tensor3 s(1, q * q * q, 1);
    for (int v = 0; v < q; ++v)
      for (int e = 0; e < q; ++e)
        for (int ep = 0; ep < q; ++ep) s(0, (v * q + e) * q + ep, 0) = rho_e(e, ep);
    ev.sites.push_back(std::move(s));
  }
  TemporalMps result;
  for (int horizon = 1; horizon <= T; ++horizon) {
    TemporalMps od = compress(add_odd_site(ev, gs), chi_max, cutoff).mps;
    result = close_odd(od, state);
    if (visit) visit(horizon, result);
    if (horizon < T) ev = compress(add_even_site(od, state), chi_max, cutoff).mps;
  }
  return result;
}

std::vector<TeeProfile> tee_series_truncated(const ControlledGateSet& gs,
                                             const BathState& state, int T,
                                             int chi_max, double cutoff) {
  std::vector<TeeProfile> out;
  const int label = chi_max >= kUnboundedChi ? -1 : chi_max;
  grow_im_truncated(gs, state, T, chi_max, cutoff,
                    [&](int, const TemporalMps& im) {
                      out.push_back(temporal_entanglement(im, label));
                    });
  return out;
}

std::vector<TeeProfile> tee_series_exact(const ControlledGateSet& gs,
                                         const ProductInitialState& state,
                                         int T) {
  const ExactIm im = build_exact_im_sparse(gs, state, T);
  std::vector<TeeProfile> out;
  for (int h = 1; h <= T; ++h)
    out.push_back(temporal_entanglement(exact_im_to_mps(im, h)));
  return out;
}

}  // namespace imlab

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

#include "influence.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "errors.hpp"

namespace imlab {

namespace {

RVec odd_weights(const ProductInitialState& s) {
  return s.psi_o.cwiseAbs2();
}

Mat emitted_state(const GroupElement& g, const Vec& psi_e) {
  const Vec v = g.rep() * psi_e;
  return v * v.adjoint();
}

}  // namespace

ExactIm build_exact_im_sparse(const ControlledGateSet& gs,
                              const ProductInitialState& state, int T,
                              size_t cap) {
  if (T < 1) fail(ErrorKind::InvalidArgument, "T must be >= 1");
  const ProductInitialState st = make_product_state(state.psi_e, state.psi_o);
  if (st.psi_e.size() != gs.q())
    fail(ErrorKind::DimensionMismatch, "state dimension != q");
  ExactIm im;
  im.q = gs.q();
  im.T = T;
  auto rs = std::make_shared<ReachableSet>(reachable_set(gs, T, kImDedupTol, cap));
  im.reach = rs;
  const RVec p = odd_weights(st);
  const auto& gens = rs->generators();
  for (int t = 1; t <= T; ++t) {
    std::map<std::tuple<std::uint32_t, int, std::uint32_t>, double> acc;
    const size_t n_in = rs->count(t - 1), n_out = rs->count(t);
    for (size_t i = 0; i < n_in; ++i) {
      for (int a = 0; a < im.q; ++a) {
        const GroupElement left = multiply(gens[static_cast<size_t>(a)], rs->element(i));
        for (int c = 0; c < im.q; ++c) {
          if (p(c) == 0.0) continue;
          const auto j = rs->find(multiply(left, gens[static_cast<size_t>(c)]));
          if (!j || *j >= n_out)
            fail(ErrorKind::InconsistentReachableSets,
                 "update leaves H(" + std::to_string(t) + ")");
          acc[{static_cast<std::uint32_t>(i), a, static_cast<std::uint32_t>(*j)}] += p(c);
        }
      }
    }
    std::vector<ExactIm::Transition> step;
    step.reserve(acc.size());
    for (const auto& [k, w] : acc)
      step.push_back({std::get<0>(k), std::get<2>(k), std::get<1>(k), w});
    im.steps.push_back(std::move(step));
  }
  im.emitted.reserve(rs->count(T));
  for (size_t j = 0; j < rs->count(T); ++j)
    im.emitted.push_back(emitted_state(rs->element(j), st.psi_e));
  return im;
}

TemporalMps exact_im_to_mps(const ExactIm& im, int horizon,
                            size_t max_entries) {
  if (horizon < 0) horizon = im.T;
  if (horizon < 1 || horizon > im.T)
    fail(ErrorKind::InvalidArgument, "horizon out of range");
  const int q = im.q, P = q * q * q;
  TemporalMps mps;
  mps.q = q;
  const auto& rs = *im.reach;
  for (int t = 0; t <= horizon; ++t) mps.bond_labels.push_back(rs.per_time(t));
  mps.bond_labels.back() = {};
  for (int t = 1; t <= horizon; ++t) {
    const int left = static_cast<int>(rs.count(t - 1));
    const int right = t == horizon ? 1 : static_cast<int>(rs.count(t));
    if (static_cast<size_t>(left) * P * right > max_entries)
      fail(ErrorKind::TooLarge, "dense exact IM tensor at t=" + std::to_string(t) +
                                    " exceeds " + std::to_string(max_entries) +
                                    " entries");
    Tensor3 w(left, P, right);
    for (const auto& tr : im.steps[static_cast<size_t>(t - 1)]) {
      const int r = t == horizon ? 0 : static_cast<int>(tr.to);
      const Mat& e = im.emitted[tr.to];
      for (int b = 0; b < q; ++b)
        for (int bp = 0; bp < q; ++bp)
          w(static_cast<int>(tr.from), (tr.a * q + b) * q + bp, r) += tr.weight * e(b, bp);
    }
    mps.sites.push_back(std::move(w));
  }
  return mps;
}

TemporalMps build_exact_im(const ControlledGateSet& gs,
                           const ProductInitialState& state, int T) {
  return exact_im_to_mps(build_exact_im_sparse(gs, state, T));
}

Tensor3 im_local_tensor(const ControlledGateSet& gs,
                        const ProductInitialState& state,
                        const std::vector<GroupElement>& H_in,
                        const std::vector<GroupElement>& H_out, double tol) {
  const ProductInitialState st = make_product_state(state.psi_e, state.psi_o);
  const int q = gs.q();
  if (st.psi_e.size() != q) fail(ErrorKind::DimensionMismatch, "state dimension != q");
  GroupIndex out_index(q, tol);
  for (const auto& g : H_out) out_index.insert(g);
  if (out_index.size() != H_out.size())
    fail(ErrorKind::InvalidArgument, "H_out contains duplicates");
  std::vector<GroupElement> gens;
  for (const Mat& u : gs.controlled()) gens.push_back(project_to_group(u));
  const RVec p = odd_weights(st);
  const int P = q * q * q * q;
  Tensor3 w(static_cast<int>(H_in.size()), P, static_cast<int>(H_out.size()));
  for (size_t i = 0; i < H_in.size(); ++i)
    for (int a = 0; a < q; ++a)
      for (int c = 0; c < q; ++c) {
        if (p(c) == 0.0) continue;
        const GroupElement g = multiply(multiply(gens[static_cast<size_t>(a)], H_in[i]),
                                        gens[static_cast<size_t>(c)]);
        const auto j = out_index.find(g);
        if (!j) fail(ErrorKind::InconsistentReachableSets, "g_a g g_c outside H_out");
        const Mat e = emitted_state(H_out[*j], st.psi_e);
        for (int b = 0; b < q; ++b)
          for (int bp = 0; bp < q; ++bp)
            w(static_cast<int>(i), ((a * q + a) * q + b) * q + bp, static_cast<int>(*j)) +=
                p(c) * e(b, bp);
      }
  return w;
}

cplx contract_with_process_complex(const ExactIm& im, const Mat& rho,
                                   const std::vector<QuantumChannel>& channels,
                                   const Mat& obs) {
  const int q = im.q, T = im.T;
  require_channels(channels, T, q);
  if (rho.rows() != q || obs.rows() != q)
    fail(ErrorKind::DimensionMismatch, "impurity operators must be q x q");
  // Unnormalized impurity state attached to each bond element.
  std::vector<Mat> x(1, rho);
  for (int t = 1; t <= T; ++t) {
    std::vector<Mat> y(im.reach->count(t), Mat::Zero(q, q));
    std::vector<cplx> w(y.size(), 0.0);
    for (const auto& tr : im.steps[static_cast<size_t>(t - 1)])
      if (tr.from < x.size()) w[tr.to] += tr.weight * x[tr.from](tr.a, tr.a);
    for (size_t j = 0; j < y.size(); ++j) {
      if (w[j] == cplx(0)) continue;
      y[j] = w[j] * im.emitted[j];
      if (t < T) y[j] = channels[static_cast<size_t>(t - 1)].apply(y[j]);
    }
    x = std::move(y);
  }
  cplx out = 0;
  for (const Mat& m : x) out += (obs * m).trace();
  return out;
}

double contract_with_process(const ExactIm& im, const Mat& rho_imp,
                             const std::vector<QuantumChannel>& channels,
                             const Mat& obs) {
  require_density(rho_imp, 1e-10, "rho_imp");
  return contract_with_process_complex(im, rho_imp, channels, obs).real();
}

namespace {

SolvableReport solvable_residual(const Mat& rho, int q) {
  // Pair tensor as a one-site MPS with trivial outer bond: the transfer map
  // Σ (BA)† S (BA) acts on 1×1 matrices as multiplication by Tr ρ.
  const cplx transfer = rho.trace();
  Mat S = Mat::Identity(1, 1);
  int it = 0;
  const int max_it = 100000;
  for (; it < max_it; ++it) {
    Mat next = transfer * S;
    next /= next.norm();
    const double diff = max_abs(next - S);
    S = std::move(next);
    if (diff <= 1e-12) break;
  }
  if (it == max_it)
    fail(ErrorKind::NonConvergentSteadyState, "steady state did not converge");
  // Even-site marginal weighted by the steady state, compared to I/q.
  Mat even = Mat::Zero(q, q);
  for (int c = 0; c < q; ++c) even += S(0, 0) * rho.block(c * q, c * q, q, q);
  return {max_abs(even - Mat::Identity(q, q) / static_cast<double>(q)), it + 1};
}

int pair_dimension(Eigen::Index n) {
  const int q = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (q < 2 || q * q != n) fail(ErrorKind::DimensionMismatch, "pair state size is not q^2");
  return q;
}

}  // namespace

SolvableReport check_solvable_state(const Vec& pair_vector,
                                    const ControlledGateSet& gs) {
  const int q = pair_dimension(pair_vector.size());
  if (q != gs.q()) fail(ErrorKind::DimensionMismatch, "state dimension != q");
  if (std::abs(pair_vector.norm() - 1.0) > 1e-12)
    fail(ErrorKind::NotNormalized, "pair state must have unit norm");
  return solvable_residual(pair_vector * pair_vector.adjoint(), q);
}

SolvableReport check_solvable_state(const Mat& pair_density,
                                    const ControlledGateSet& gs) {
  const int q = pair_dimension(pair_density.rows());
  if (q != gs.q() || pair_density.cols() != pair_density.rows())
    fail(ErrorKind::DimensionMismatch, "state dimension != q");
  if (std::abs(pair_density.trace() - cplx(1.0)) > 1e-12)
    fail(ErrorKind::NotNormalized, "pair density must have unit trace");
  require_density(pair_density, 1e-10, "pair density");
  return solvable_residual(pair_density, q);
}

}  // namespace imlab

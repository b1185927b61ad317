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

#include "memory.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "chain.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "json.hpp"
#include "walk.hpp"

namespace imlab {

namespace {

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t a) {
  std::uint64_t z = seed ^ (i * 0x9e3779b97f4a7c15ULL) ^ (a * 0xc2b2ae3d27d4eb4fULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool uniform_alpha(const Vec& alpha) {
  const double target = 1.0 / std::sqrt(static_cast<double>(alpha.size()));
  for (Eigen::Index a = 0; a < alpha.size(); ++a)
    if (std::abs(std::abs(alpha(a)) - target) > 1e-12) return false;
  return true;
}

}  // namespace

bool is_phase_permutation(const Mat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    int nz = 0;
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const double m = std::abs(u(i, j));
      if (m > tol) {
        if (std::abs(m - 1.0) > tol) return false;
        ++nz;
      }
    }
    if (nz != 1) return false;
  }
  return unitarity_residual(u) <= tol;
}

TeleportFamily make_teleport_family(std::vector<Mat> w, Vec alpha,
                                    const ControlledGateSet& gs) {
  const int q = gs.q();
  if (static_cast<int>(w.size()) != q || alpha.size() != q)
    fail(ErrorKind::DimensionMismatch, "need q unitaries w and q amplitudes");
  const Eigen::Index D = w.front().rows();
  for (size_t a = 0; a < w.size(); ++a) {
    if (w[a].rows() != D || w[a].cols() != D)
      fail(ErrorKind::DimensionMismatch, "all w must be D x D");
    if (unitarity_residual(w[a]) > 1e-10)
      fail(ErrorKind::NonUnitary, "w[" + std::to_string(a) + "] is not unitary");
  }
  if (std::abs(alpha.norm() - 1.0) > 1e-12)
    fail(ErrorKind::NotNormalized, "alpha is not normalized");
  for (int a = 0; a < q; ++a)
    if (!is_phase_permutation(gs.u(a), 1e-10))
      fail(ErrorKind::InvalidArgument,
           "u[" + std::to_string(a) + "] is not a phase times a permutation");
  return TeleportFamily{q, static_cast<int>(D), std::move(w), std::move(alpha), gs};
}

TeleportFamily random_teleport_family(int q, std::uint64_t seed) {
  if (q < 2) fail(ErrorKind::InvalidArgument, "q must be >= 2");
  std::vector<Mat> w;
  for (int a = 0; a < q; ++a)
    w.push_back(sample_haar_unitary(q, sample_seed(seed, 0, static_cast<std::uint64_t>(a))));
  std::mt19937_64 rng(sample_seed(seed, 1, 0));
  std::uniform_real_distribution<double> phase(-M_PI, M_PI);
  std::vector<Mat> us;
  for (int a = 0; a < q; ++a) {
    Mat u = Mat::Zero(q, q);
    for (int i = 0; i < q; ++i) u((i + a) % q, i) = std::polar(1.0, phase(rng));
    us.push_back(u);
  }
  return make_teleport_family(std::move(w), Vec::Constant(q, 1.0 / std::sqrt(q)),
                              make_gate_set(q, us));
}

BipartiteState make_bipartite(const Mat& rho, int dA, int dB) {
  if (dA < 1 || dB < 1 || rho.rows() != dA * dB || rho.cols() != dA * dB)
    fail(ErrorKind::BadDims, "dims do not match the matrix size");
  require_density(rho, 1e-10, "bipartite state");
  return BipartiteState{rho, dA, dB};
}

BipartiteState effective_state(const TeleportFamily& fam, bool allow_nonuniform) {
  if (!allow_nonuniform && !uniform_alpha(fam.alpha))
    fail(ErrorKind::NonUniformAlpha, "alpha is not uniform");
  const int q = fam.q, D = fam.D;
  Mat rho = Mat::Zero(q * D, q * D);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      rho.block(a * D, b * D, D, D) =
          fam.alpha(a) * std::conj(fam.alpha(b)) / static_cast<double>(D) *
          fam.w[static_cast<size_t>(a)] * fam.w[static_cast<size_t>(b)].adjoint();
  return make_bipartite(rho, q, D);
}

Mat partial_transpose_a(const BipartiteState& s) {
  const int dA = s.dA, dB = s.dB;
  if (s.rho.rows() != dA * dB || s.rho.cols() != dA * dB)
    fail(ErrorKind::BadDims, "dims do not match the matrix size");
  Mat pt(dA * dB, dA * dB);
  for (int a = 0; a < dA; ++a)
    for (int a2 = 0; a2 < dA; ++a2)
      pt.block(a2 * dB, a * dB, dB, dB) = s.rho.block(a * dB, a2 * dB, dB, dB);
  return pt;
}

double negativity(const BipartiteState& s) {
  const Mat pt = partial_transpose_a(s);
  const RVec ev = eigenvalues_hermitian(0.5 * (pt + pt.adjoint()));
  return (ev.cwiseAbs().sum() - 1.0) / 2.0;
}

NegativityHistogram negativity_histogram(int q, long n_samples, std::uint64_t seed) {
  if (q < 2 || q > 4) fail(ErrorKind::UnsupportedDimension, "q must be 2, 3 or 4");
  if (n_samples < 1) fail(ErrorKind::InvalidArgument, "n_samples must be >= 1");
  NegativityHistogram h;
  h.q = q;
  h.seed = seed;
  h.values.assign(static_cast<size_t>(n_samples), 0.0);
  const Vec alpha = Vec::Constant(q, 1.0 / std::sqrt(q));
  auto one = [&](long i) {
    TeleportFamily fam;
    fam.q = fam.D = q;
    fam.alpha = alpha;
    for (int a = 0; a < q; ++a)
      fam.w.push_back(sample_haar_unitary(
          q, sample_seed(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(a))));
    h.values[static_cast<size_t>(i)] = negativity(effective_state(fam));
  };
  const int nt = static_cast<int>(std::min<long>(worker_threads(), n_samples));
  if (nt <= 1) {
    for (long i = 0; i < n_samples; ++i) one(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (long i = t; i < n_samples; i += nt) one(i);
      });
    for (auto& th : pool) th.join();
  }
  const double hi = (q - 1) / 2.0;
  for (int k = 0; k <= kNegativityBins; ++k) h.bin_edges.push_back(hi * k / kNegativityBins);
  h.counts.assign(kNegativityBins, 0);
  long positive = 0;
  for (double v : h.values) {
    const int k = std::clamp(static_cast<int>(v / hi * kNegativityBins), 0, kNegativityBins - 1);
    ++h.counts[static_cast<size_t>(k)];
    if (v > 1e-6) ++positive;
  }
  h.mean = std::accumulate(h.values.begin(), h.values.end(), 0.0) / static_cast<double>(n_samples);
  std::vector<double> sorted = h.values;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  h.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  h.max = sorted.back();
  h.fraction_positive = static_cast<double>(positive) / static_cast<double>(n_samples);
  return h;
}

std::string negativity_csv(const NegativityHistogram& h) {
  std::ostringstream os;
  os.precision(17);
  os << "bin_left,bin_right,count\n";
  for (size_t k = 0; k < h.counts.size(); ++k)
    os << h.bin_edges[k] << ',' << h.bin_edges[k + 1] << ',' << h.counts[k] << '\n';
  return os.str();
}

std::string negativity_summary_json(const NegativityHistogram& h) {
  nlohmann::json j;
  j["q"] = h.q;
  j["seed"] = h.seed;
  j["n_samples"] = h.values.size();
  j["mean"] = h.mean;
  j["median"] = h.median;
  j["max"] = h.max;
  j["fraction_positive"] = h.fraction_positive;
  return j.dump(2);
}

std::vector<TeleportOutcome> teleport_oracle(const TeleportFamily& fam, int T,
                                             size_t max_bytes) {
  if (T < 1) fail(ErrorKind::InvalidArgument, "T must be >= 1");
  const int q = fam.q, D = fam.D;
  const Mat& U = fam.gs.two_qudit();

  DenseState psi(max_bytes);
  // R ⊗ B maximally entangled; slots 0 and 1.
  Vec phi = Vec::Zero(D * D);
  for (int j = 0; j < D; ++j) phi(j * D + j) = 1.0 / std::sqrt(D);
  psi.append(phi, {D, D});
  const size_t slot_b = 1;
  // Sites −2T..0, far end first; even sites pull the bond through w^a.
  std::vector<size_t> slot(static_cast<size_t>(2 * T + 1));
  auto at = [&](int p) -> size_t& { return slot[static_cast<size_t>(p + 2 * T)]; };
  Mat grow = Mat::Zero(q * D, q * D);  // |a⟩⟨0| ⊗ α_a w^a on (site, B)
  for (int a = 0; a < q; ++a)
    grow.block(a * D, 0, D, D) = fam.alpha(a) * fam.w[static_cast<size_t>(a)];
  Vec zero = Vec::Zero(q);
  zero(0) = 1.0;
  for (int p = -2 * T; p <= 0; ++p) {
    at(p) = psi.append(zero, {q});
    if (p % 2 == 0 && p < 0) psi.apply(grow, {at(p), slot_b});
  }
  auto step = [&](DenseState& s) {
    for (int p = -2 * T; p <= -2; p += 2) s.apply(U, {at(p), at(p + 1)});
    for (int p = -2 * T + 1; p <= -1; p += 2) s.apply(U, {at(p), at(p + 1)});
  };

  std::vector<TeleportOutcome> out;
  std::vector<int> path;
  // Depth-first over outcome strings.
  std::function<void(DenseState, int)> rec = [&](DenseState s, int t) {
    step(s);
    if (t == T) {
      TeleportOutcome o;
      o.outcomes = path;
      const Mat rho = s.reduced({at(0), slot_b});
      o.probability = rho.trace().real();
      if (o.probability > 1e-14) {
        const Mat r = rho / o.probability;
        o.negativity = negativity(BipartiteState{0.5 * (r + r.adjoint()), q, D});
      } else {
        o.negativity = std::numeric_limits<double>::quiet_NaN();
      }
      out.push_back(std::move(o));
      return;
    }
    for (int m = 0; m < q; ++m) {
      Mat reset = Mat::Zero(q, q);
      reset(0, m) = 1.0;
      DenseState next = s;
      next.apply(reset, {at(0)});
      path.push_back(m);
      rec(std::move(next), t + 1);
      path.pop_back();
    }
  };
  rec(std::move(psi), 1);
  return out;
}

}  // namespace imlab

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

#include "walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "errors.hpp"

namespace imlab {

namespace {

constexpr double kDensityTol = 1e-10;
constexpr double kProbTol = 1e-12;
constexpr long kBlock = 4096;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream keyed on (seed, trajectory).
struct Stream {
  std::uint64_t s;
  Stream(std::uint64_t seed, std::uint64_t index)
      : s(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                mix64(index * 0xd1b54a32d192ed03ULL + 1))) {}
  double uniform() {
    s += 0x9e3779b97f4a7c15ULL;
    return static_cast<double>(mix64(s) >> 11) * 0x1.0p-53;
  }
};

size_t sample_cdf(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return std::min(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
}

RVec odd_weights(const Vec& psi_o) { return psi_o.cwiseAbs2(); }

bool is_identity(const Mat& m) {
  return m.rows() == m.cols() && m == Mat::Identity(m.rows(), m.cols());
}

// Running (n, mean, M2) merged with Chan's formula.
struct Moments {
  long n = 0;
  double mean = 0;
  double m2 = 0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  static Moments merge(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments r;
    r.n = a.n + b.n;
    const double d = b.mean - a.mean;
    const double fb = static_cast<double>(b.n) / static_cast<double>(r.n);
    r.mean = a.mean + d * fb;
    r.m2 = a.m2 + b.m2 + d * d * static_cast<double>(a.n) * fb;
    return r;
  }
  McEstimate estimate() const {
    McEstimate e;
    e.n = n;
    e.mean = mean;
    e.std_error = n > 1 ? std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)) /
                                    static_cast<double>(n))
                        : 0.0;
    return e;
  }
};

struct FirstStep {
  std::vector<int> a, b;
  std::vector<double> cdf;
};

struct WalkTables {
  int q;
  std::vector<Mat> u;
  std::vector<Mat> kraus;
  bool identity_channel;
  std::vector<double> odd_cdf;
  Vec psi_e;
  Mat obs;
  bool obs_identity;
};

template <int D>
using MatD = Eigen::Matrix<cplx, D, D>;
template <int D>
using VecD = Eigen::Matrix<cplx, D, 1>;

// Runs trajectories [begin, end) and accumulates f_t into per-t moments.
template <int D>
void run_range(const WalkTables& tb, const FirstStep& first, int T,
               std::uint64_t seed, long begin, long end,
               std::vector<Moments>& out) {
  const int q = tb.q;
  std::vector<MatD<D>> u(static_cast<size_t>(q));
  for (int a = 0; a < q; ++a) u[static_cast<size_t>(a)] = tb.u[static_cast<size_t>(a)];
  std::vector<MatD<D>> kraus;
  for (const Mat& k : tb.kraus) kraus.emplace_back(k);
  const VecD<D> psi = tb.psi_e;
  const MatD<D> O = tb.obs;
  std::vector<double> rcdf(static_cast<size_t>(q));
  for (long n = begin; n < end; ++n) {
    Stream rng(seed, static_cast<std::uint64_t>(n));
    const size_t k0 = sample_cdf(first.cdf, rng.uniform());
    MatD<D> U = u[static_cast<size_t>(first.b[k0])] * u[static_cast<size_t>(first.a[k0])];
    for (int t = 1;; ++t) {
      VecD<D> phi = U * psi;
      if (tb.obs_identity) {
        out[static_cast<size_t>(t - 1)].add(1.0);
      } else {
        const double nrm = phi.squaredNorm();
        out[static_cast<size_t>(t - 1)].add(phi.dot(O * phi).real() / nrm);
      }
      if (t == T) break;
      double acc = 0;
      if (tb.identity_channel) {
        for (int b = 0; b < q; ++b)
          rcdf[static_cast<size_t>(b)] = acc += std::norm(phi(b));
      } else {
        VecD<D> r = VecD<D>::Zero(q);
        for (const auto& K : kraus) r += (K * phi).cwiseAbs2().template cast<cplx>();
        for (int b = 0; b < q; ++b)
          rcdf[static_cast<size_t>(b)] = acc += r(b).real();
      }
      const size_t b = sample_cdf(rcdf, rng.uniform());
      const size_t a = sample_cdf(tb.odd_cdf, rng.uniform());
      U = u[b] * U * u[a];
    }
  }
}

std::vector<Moments> pairwise(std::vector<std::vector<Moments>> blocks, int T) {
  if (blocks.empty()) return std::vector<Moments>(static_cast<size_t>(T));
  while (blocks.size() > 1) {
    std::vector<std::vector<Moments>> next;
    for (size_t i = 0; i + 1 < blocks.size(); i += 2) {
      std::vector<Moments> m(static_cast<size_t>(T));
      for (int t = 0; t < T; ++t)
        m[static_cast<size_t>(t)] = Moments::merge(blocks[i][static_cast<size_t>(t)],
                                                   blocks[i + 1][static_cast<size_t>(t)]);
      next.push_back(std::move(m));
    }
    if (blocks.size() % 2) next.push_back(std::move(blocks.back()));
    blocks = std::move(next);
  }
  return blocks.front();
}

std::vector<McEstimate> run_walk(const WalkConfig& cfg, const Mat& obs,
                                 const FirstStep& first, std::uint64_t seed) {
  WalkTables tb;
  tb.q = cfg.gs.q();
  tb.u = cfg.gs.controlled();
  tb.kraus = cfg.channel.kraus;
  tb.identity_channel = tb.kraus.size() == 1 && is_identity(tb.kraus.front());
  const RVec w = odd_weights(cfg.state.psi_o);
  double acc = 0;
  for (int a = 0; a < tb.q; ++a) tb.odd_cdf.push_back(acc += w(a));
  tb.psi_e = cfg.state.psi_e;
  tb.obs = obs;
  tb.obs_identity = is_identity(obs);

  const int T = cfg.T;
  const long n = cfg.n_samples;
  const long nblocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<Moments>> blocks(static_cast<size_t>(nblocks),
                                           std::vector<Moments>(static_cast<size_t>(T)));
  auto work = [&](long blk) {
    const long lo = blk * kBlock, hi = std::min(n, lo + kBlock);
    if (tb.q == 2)
      run_range<2>(tb, first, T, seed, lo, hi, blocks[static_cast<size_t>(blk)]);
    else
      run_range<Eigen::Dynamic>(tb, first, T, seed, lo, hi,
                                blocks[static_cast<size_t>(blk)]);
  };
  const int nt = std::min<long>(worker_threads(), std::max<long>(1, nblocks));
  if (nt <= 1) {
    for (long b = 0; b < nblocks; ++b) work(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w)
      pool.emplace_back([&, w] {
        for (long b = w; b < nblocks; b += nt) work(b);
      });
    for (auto& th : pool) th.join();
  }
  const auto merged = pairwise(std::move(blocks), T);
  std::vector<McEstimate> out;
  for (const auto& m : merged) out.push_back(m.estimate());
  return out;
}

void check_obs(const Mat& obs, int q, const char* what) {
  if (obs.rows() != q || obs.cols() != q)
    fail(ErrorKind::DimensionMismatch, std::string(what) + " must be q x q");
}

// First-step weights ⟨b|X|b⟩·|⟨a|ψ_o⟩|² for a general (possibly non-Hermitian) X.
std::vector<cplx> first_weights(const Mat& X, const Vec& psi_o) {
  const int q = static_cast<int>(X.rows());
  const RVec w = odd_weights(psi_o);
  std::vector<cplx> out;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) out.push_back(X(b, b) * w(a));
  return out;
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("IM_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const WalkConfig& cfg) {
  const int q = cfg.gs.q();
  if (cfg.state.psi_e.size() != q || cfg.state.psi_o.size() != q)
    fail(ErrorKind::DimensionMismatch, "state dimension differs from gate set");
  if (cfg.rho_imp.rows() != q)
    fail(ErrorKind::DimensionMismatch, "rho_imp dimension differs from gate set");
  require_density(cfg.rho_imp, kDensityTol, "rho_imp");
  if (cfg.channel.kraus.empty() || cfg.channel.q() != q)
    fail(ErrorKind::DimensionMismatch, "channel dimension differs from gate set");
  if (trace_preservation_residual(cfg.channel.kraus) > 1e-10)
    fail(ErrorKind::NonTracePreserving, "channel is not trace preserving");
  if (cfg.T < 1) fail(ErrorKind::InvalidArgument, "T must be >= 1");
  if (cfg.n_samples < 1) fail(ErrorKind::InvalidArgument, "n_samples must be >= 1");
}

std::vector<Branch> initial_prob(const ControlledGateSet& gs, const Mat& rho_imp,
                                 const Vec& psi_o) {
  const int q = gs.q();
  if (rho_imp.rows() != q || psi_o.size() != q)
    fail(ErrorKind::DimensionMismatch, "initial_prob: dimension mismatch");
  require_density(rho_imp, kDensityTol, "rho_imp");
  const RVec w = odd_weights(psi_o);
  std::vector<Branch> out;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      const double p = rho_imp(b, b).real() * w(a);
      out.push_back({a, b, p, project_to_group(gs.u(b) * gs.u(a))});
    }
  return out;
}

std::vector<Branch> conditional_prob(const ControlledGateSet& gs,
                                     const GroupElement& g,
                                     const QuantumChannel& channel,
                                     const Vec& psi_e, const Vec& psi_o) {
  const int q = gs.q();
  if (trace_preservation_residual(channel.kraus) > 1e-10)
    fail(ErrorKind::NonTracePreserving, "channel is not trace preserving");
  if (channel.q() != q || psi_e.size() != q || psi_o.size() != q || g.q() != q)
    fail(ErrorKind::DimensionMismatch, "conditional_prob: dimension mismatch");
  const Vec phi = g.rep() * psi_e;
  const Mat e = channel.apply(phi * phi.adjoint());
  const RVec w = odd_weights(psi_o);
  std::vector<Branch> out;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      const double p = std::max(0.0, e(b, b).real()) * w(a);
      out.push_back({a, b, p,
                     multiply(multiply(project_to_group(gs.u(b)), g),
                              project_to_group(gs.u(a)))});
    }
  return out;
}

std::vector<McEstimate> estimate_observable_series(const WalkConfig& cfg,
                                                   const Mat& obs) {
  validate(cfg);
  check_obs(obs, cfg.gs.q(), "observable");
  FirstStep first;
  double acc = 0;
  for (const Branch& br : initial_prob(cfg.gs, cfg.rho_imp, cfg.state.psi_o)) {
    if (br.p <= 0) continue;
    first.a.push_back(br.a);
    first.b.push_back(br.b);
    first.cdf.push_back(acc += br.p);
  }
  return run_walk(cfg, obs, first, cfg.seed);
}

McEstimate estimate_observable(const WalkConfig& cfg, const Mat& obs) {
  return estimate_observable_series(cfg, obs).back();
}

std::vector<TwoPointEstimate> estimate_two_point_series(const WalkConfig& cfg,
                                                        const Mat& O_prime,
                                                        const Mat& obs) {
  validate(cfg);
  const int q = cfg.gs.q();
  check_obs(obs, q, "observable");
  check_obs(O_prime, q, "O_prime");
  const std::vector<cplx> w = first_weights(O_prime * cfg.rho_imp, cfg.state.psi_o);
  bool any = false;
  for (const cplx& x : w) any |= std::abs(x) > kProbTol;
  if (!any) fail(ErrorKind::AllZeroWeights, "every first-step weight vanishes");

  std::vector<TwoPointEstimate> out(static_cast<size_t>(cfg.T));
  // part 0: real, part 1: imaginary; sign +1 / −1 classes.
  for (int part = 0; part < 2; ++part) {
    std::vector<double> mean(static_cast<size_t>(cfg.T), 0.0);
    std::vector<double> var(static_cast<size_t>(cfg.T), 0.0);
    long n_used = 0;
    for (int sign : {+1, -1}) {
      FirstStep first;
      double total = 0;
      for (size_t k = 0; k < w.size(); ++k) {
        const double v = sign * (part == 0 ? w[k].real() : w[k].imag());
        if (v <= kProbTol) continue;
        first.a.push_back(static_cast<int>(k) / q);
        first.b.push_back(static_cast<int>(k) % q);
        first.cdf.push_back(total += v);
      }
      if (first.cdf.empty()) continue;
      const std::uint64_t seed =
          mix64(cfg.seed ^ mix64(static_cast<std::uint64_t>(2 * part + (sign < 0))));
      const auto series = run_walk(cfg, obs, first, seed);
      for (int t = 0; t < cfg.T; ++t) {
        const auto& e = series[static_cast<size_t>(t)];
        mean[static_cast<size_t>(t)] += sign * total * e.mean;
        var[static_cast<size_t>(t)] += total * total * e.std_error * e.std_error;
      }
      n_used += cfg.n_samples;
    }
    for (int t = 0; t < cfg.T; ++t) {
      McEstimate e{mean[static_cast<size_t>(t)],
                   std::sqrt(var[static_cast<size_t>(t)]), n_used};
      (part == 0 ? out[static_cast<size_t>(t)].re : out[static_cast<size_t>(t)].im) = e;
    }
  }
  return out;
}

TwoPointEstimate estimate_two_point(const WalkConfig& cfg, const Mat& O_prime,
                                    const Mat& obs) {
  return estimate_two_point_series(cfg, O_prime, obs).back();
}

namespace {

// Closed form for channels with diag(K[X]) = r·Tr X:
// ⟨O(t)⟩ = Tr(O · 𝓑^{t−1} 𝓑_1 𝓐^t [ψψ†]).
std::vector<cplx> closed_form_series(const ControlledGateSet& gs,
                                     const ProductInitialState& st,
                                     const std::vector<cplx>& b1,
                                     const RVec& r, const Mat& obs, int T) {
  const int q = gs.q();
  const int q2 = q * q;
  const RVec w = odd_weights(st.psi_o);
  Mat A = Mat::Zero(q2, q2), B = Mat::Zero(q2, q2), B1 = Mat::Zero(q2, q2);
  for (int a = 0; a < q; ++a) {
    const Mat ad = adjoint_superop(gs.u(a));
    A += w(a) * ad;
    B += r(a) * ad;
    B1 += b1[static_cast<size_t>(a)] * ad;
  }
  // Tr(O X) = Σ_ij O_ji X_ij = ⟨vec(Oᵀ), vec(X)⟩ without conjugation.
  Vec ov = vec_rowmajor(obs.transpose());
  std::vector<cplx> out;
  Vec x = vec_rowmajor(st.psi_e * st.psi_e.adjoint());
  // Row vector ℓ_t = vec(Oᵀ)ᵀ 𝓑^{t−1}; the right vector needs 𝓐^t.
  Vec left = ov;  // transposed as a column
  for (int t = 1; t <= T; ++t) {
    x = A * x;
    out.push_back((left.transpose() * (B1 * x))(0));
    left = (left.transpose() * B).transpose();
  }
  return out;
}

struct Distribution {
  GroupIndex index;
  std::vector<cplx> weight;
  Distribution(int q, double tol) : index(q, tol) {}
  void add(const GroupElement& g, cplx w) {
    auto [i, inserted] = index.insert(g);
    if (inserted) weight.push_back(0.0);
    weight[i] += w;
  }
};

cplx observe(const Distribution& d, const Vec& psi_e, const Mat& obs) {
  cplx s = 0;
  const bool id = is_identity(obs);
  for (size_t i = 0; i < d.index.size(); ++i) {
    if (id) {
      s += d.weight[i];
      continue;
    }
    const Vec phi = d.index.at(i).rep() * psi_e;
    s += d.weight[i] * phi.dot(obs * phi) / phi.squaredNorm();
  }
  return s;
}

// Exhaustive forward propagation of the (quasi-)distribution over elements.
// With a grid, every updated element is replaced by its nearest grid point.
std::vector<cplx> propagate(const ControlledGateSet& gs,
                            const ProductInitialState& st,
                            const std::vector<cplx>& first,
                            const QuantumChannel& channel, const Mat& obs,
                            int T, size_t cap, double tol,
                            const CoveringGrid* grid) {
  const int q = gs.q();
  const RVec w = odd_weights(st.psi_o);
  std::vector<GroupElement> gen;
  for (int a = 0; a < q; ++a) gen.push_back(project_to_group(gs.u(a)));
  auto place = [&](const GroupElement& g) {
    return grid ? grid->points()[grid->nearest_index(g)] : g;
  };
  Distribution cur(q, tol);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      const cplx p = first[static_cast<size_t>(a * q + b)];
      if (p == 0.0) continue;
      cur.add(place(multiply(gen[static_cast<size_t>(b)], gen[static_cast<size_t>(a)])), p);
    }
  std::vector<cplx> out;
  out.push_back(observe(cur, st.psi_e, obs));
  for (int t = 2; t <= T; ++t) {
    Distribution next(q, tol);
    for (size_t i = 0; i < cur.index.size(); ++i) {
      const GroupElement& g = cur.index.at(i);
      const Vec phi = g.rep() * st.psi_e;
      const Mat e = channel.apply(phi * phi.adjoint());
      for (int a = 0; a < q; ++a) {
        if (w(a) == 0) continue;
        const GroupElement ga = multiply(g, gen[static_cast<size_t>(a)]);
        for (int b = 0; b < q; ++b) {
          const double r = e(b, b).real();
          if (r <= 0) continue;
          next.add(place(multiply(gen[static_cast<size_t>(b)], ga)),
                   cur.weight[i] * (r * w(a)));
          if (next.index.size() > cap)
            fail(ErrorKind::ExplosionGuard,
                 "transfer support exceeds " + std::to_string(cap) +
                     " elements at t=" + std::to_string(t));
        }
      }
    }
    cur = std::move(next);
    out.push_back(observe(cur, st.psi_e, obs));
  }
  return out;
}

}  // namespace

std::vector<cplx> exact_transfer_series(const ControlledGateSet& gs,
                                        const ProductInitialState& state,
                                        const Mat& rho,
                                        const QuantumChannel& channel,
                                        const Mat& obs, int T,
                                        const TransferOptions& opt) {
  const int q = gs.q();
  if (T < 1) fail(ErrorKind::InvalidArgument, "T must be >= 1");
  check_obs(obs, q, "observable");
  check_obs(rho, q, "first-step operator");
  if (channel.q() != q)
    fail(ErrorKind::DimensionMismatch, "channel dimension differs from gate set");
  if (trace_preservation_residual(channel.kraus) > 1e-10)
    fail(ErrorKind::NonTracePreserving, "channel is not trace preserving");
  RVec r;
  if (opt.allow_closed_form && T > 1 && channel.homogeneous(&r)) {
    std::vector<cplx> b1;
    for (int b = 0; b < q; ++b) b1.push_back(rho(b, b));
    return closed_form_series(gs, state, b1, r, obs, T);
  }
  return propagate(gs, state, first_weights(rho, state.psi_o), channel, obs, T,
                   opt.cap, opt.tol, nullptr);
}

double exact_observable_via_transfer(const ControlledGateSet& gs,
                                     const ProductInitialState& state,
                                     const Mat& rho_imp,
                                     const QuantumChannel& channel,
                                     const Mat& obs, int T,
                                     const TransferOptions& opt) {
  require_density(rho_imp, kDensityTol, "rho_imp");
  return exact_transfer_series(gs, state, rho_imp, channel, obs, T, opt).back().real();
}

cplx exact_two_point_via_transfer(const ControlledGateSet& gs,
                                  const ProductInitialState& state,
                                  const Mat& rho_imp,
                                  const QuantumChannel& channel,
                                  const Mat& O_prime, const Mat& obs, int T,
                                  const TransferOptions& opt) {
  require_density(rho_imp, kDensityTol, "rho_imp");
  check_obs(O_prime, gs.q(), "O_prime");
  return exact_transfer_series(gs, state, O_prime * rho_imp, channel, obs, T, opt)
      .back();
}

double snapped_walk_observable(const WalkConfig& cfg, const Mat& obs,
                               const CoveringGrid& grid) {
  if (cfg.gs.q() != 2)
    fail(ErrorKind::UnsupportedDimension, "covering grids exist for q = 2 only");
  WalkConfig c = cfg;
  c.n_samples = std::max(1L, c.n_samples);
  validate(c);
  check_obs(obs, 2, "observable");
  return propagate(cfg.gs, cfg.state, first_weights(cfg.rho_imp, cfg.state.psi_o),
                   cfg.channel, obs, cfg.T, kDefaultExplosionCap, 1e-12, &grid)
      .back()
      .real();
}

std::string mc_csv(const std::vector<McEstimate>& series, std::uint64_t seed,
                   bool header) {
  std::ostringstream os;
  os << std::setprecision(17);
  if (header) os << "T,mean,stderr,n,seed\n";
  for (size_t t = 0; t < series.size(); ++t)
    os << t + 1 << ',' << series[t].mean << ',' << series[t].std_error << ','
       << series[t].n << ',' << seed << '\n';
  return os.str();
}

}  // namespace imlab

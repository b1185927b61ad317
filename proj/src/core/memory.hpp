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

#include <cstdint>
#include <string>
#include <vector>

#include "gates.hpp"

namespace imlab {

// Even-site MPS A^a = α_a w^a (odd sites |0⟩) together with controlled
// unitaries of the form u_a = D_a P_a.
struct TeleportFamily {
  int q = 0;
  int D = 0;
  std::vector<Mat> w;  // q unitaries, D × D
  Vec alpha;           // Σ|α_a|² = 1
  ControlledGateSet gs;
};

// Validates unitarity of w (1e-10), normalization of alpha (1e-12) and the
// phase-times-permutation form of every u_a.
TeleportFamily make_teleport_family(std::vector<Mat> w, Vec alpha,
                                    const ControlledGateSet& gs);

// Haar w^a, uniform α, D = q and u_a = (random phases)·(cyclic shift by a).
TeleportFamily random_teleport_family(int q, std::uint64_t seed);

bool is_phase_permutation(const Mat& u, double tol = 1e-12);

struct BipartiteState {
  Mat rho;
  int dA = 0;
  int dB = 0;
};

BipartiteState make_bipartite(const Mat& rho, int dA, int dB);

// ρ_eff = Σ_{a,a'} α_a α*_{a'} |a⟩⟨a'| ⊗ w^a (w^{a'})† / D. Non-uniform α is
// rejected with NonUniformAlpha unless allow_nonuniform is set.
BipartiteState effective_state(const TeleportFamily& fam,
                               bool allow_nonuniform = false);

// Partial transpose on the first factor.
Mat partial_transpose_a(const BipartiteState& s);

// (‖ρ^{T_A}‖₁ − 1) / 2
double negativity(const BipartiteState& s);

constexpr int kNegativityBins = 50;

struct NegativityHistogram {
  int q = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // per sample, in sample order
  std::vector<double> bin_edges;
  std::vector<long> counts;
  double mean = 0;
  double median = 0;
  double max = 0;
  double fraction_positive = 0;  // negativity > 1e-6
};

// Bins cover [0, (q − 1)/2], the largest negativity of a q × q state.
NegativityHistogram negativity_histogram(int q, long n_samples, std::uint64_t seed);

std::string negativity_csv(const NegativityHistogram& h);
std::string negativity_summary_json(const NegativityHistogram& h);

struct TeleportOutcome {
  std::vector<int> outcomes;  // m_1 .. m_{T−1}
  double probability = 0;
  double negativity = 0;  // NaN when the probability vanishes
};

// Statevector simulation on sites −2T..0 (impurity at 0). The far end of
// the even-site MPS is purified by a reference R, the open bond at the
// impurity end is qudit B. The impurity starts in |0⟩ and after each of the
// first T − 1 steps is measured in the computational basis and reset to |0⟩;
// A is the impurity after step T.
std::vector<TeleportOutcome> teleport_oracle(const TeleportFamily& fam, int T,
                                             size_t max_bytes = size_t{256} << 20);

}  // namespace imlab

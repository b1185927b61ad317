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

#include "channel.hpp"
#include "covering.hpp"
#include "gates.hpp"
#include "group.hpp"
#include "reachable.hpp"

namespace imlab {

struct WalkConfig {
  ControlledGateSet gs;
  ProductInitialState state;
  Mat rho_imp;
  QuantumChannel channel;
  int T = 1;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// Throws unless rho_imp is a density matrix, the channel is trace
// preserving and all dimensions agree.
void validate(const WalkConfig& cfg);

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  long n = 0;
};

// One update branch: odd value a (weight |⟨a|ψ_o⟩|²), impurity value b, and
// the resulting element g_b g g_a.
struct Branch {
  int a;
  int b;
  double p;
  GroupElement target;
};

std::vector<Branch> initial_prob(const ControlledGateSet& gs, const Mat& rho_imp,
                                 const Vec& psi_o);
std::vector<Branch> conditional_prob(const ControlledGateSet& gs,
                                     const GroupElement& g,
                                     const QuantumChannel& channel,
                                     const Vec& psi_e, const Vec& psi_o);

// Monte Carlo estimates of ⟨O(t)⟩ for t = 1..T from one set of trajectories.
std::vector<McEstimate> estimate_observable_series(const WalkConfig& cfg,
                                                   const Mat& obs);
McEstimate estimate_observable(const WalkConfig& cfg, const Mat& obs);

struct TwoPointEstimate {
  McEstimate re;
  McEstimate im;
};

// ⟨O(T) O'(0)⟩ by sign-split quasi-probability sampling of the first step.
std::vector<TwoPointEstimate> estimate_two_point_series(const WalkConfig& cfg,
                                                        const Mat& O_prime,
                                                        const Mat& obs);
TwoPointEstimate estimate_two_point(const WalkConfig& cfg, const Mat& O_prime,
                                    const Mat& obs);

struct TransferOptions {
  // Use the closed form when diag(K[X]) = r·Tr X.
  bool allow_closed_form = true;
  size_t cap = kDefaultExplosionCap;
  double tol = 1e-10;
};

// Deterministic sums over all branch sequences, t = 1..T.
std::vector<cplx> exact_transfer_series(const ControlledGateSet& gs,
                                        const ProductInitialState& state,
                                        const Mat& rho, const QuantumChannel& channel,
                                        const Mat& obs, int T,
                                        const TransferOptions& opt = {});
double exact_observable_via_transfer(const ControlledGateSet& gs,
                                     const ProductInitialState& state,
                                     const Mat& rho_imp,
                                     const QuantumChannel& channel,
                                     const Mat& obs, int T,
                                     const TransferOptions& opt = {});
cplx exact_two_point_via_transfer(const ControlledGateSet& gs,
                                  const ProductInitialState& state,
                                  const Mat& rho_imp, const QuantumChannel& channel,
                                  const Mat& O_prime, const Mat& obs, int T,
                                  const TransferOptions& opt = {});

// Transfer sum with every updated element replaced by its nearest grid point.
double snapped_walk_observable(const WalkConfig& cfg, const Mat& obs,
                               const CoveringGrid& grid);

// Worker count from IM_LAB_THREADS (default: hardware concurrency).
int worker_threads();

std::string mc_csv(const std::vector<McEstimate>& series, std::uint64_t seed,
                   bool header = true);

}  // namespace imlab

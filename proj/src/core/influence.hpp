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
#include <memory>
#include <vector>

#include "channel.hpp"
#include "gates.hpp"
#include "mps.hpp"
#include "reachable.hpp"

namespace imlab {

constexpr double kImDedupTol = 1e-9;

// Exact influence matrix of a product initial state, held sparsely: step t
// maps bond element g ∈ H(t−1) and received value a to g' = g_a g g_c with
// weight |⟨c|ψ_o⟩|², and g' hands the impurity u(g')|ψ_e⟩⟨ψ_e|u(g')†.
struct ExactIm {
  struct Transition {
    std::uint32_t from;
    std::uint32_t to;
    int a;
    double weight;
  };
  int q = 2;
  int T = 0;
  std::shared_ptr<const ReachableSet> reach;
  std::vector<std::vector<Transition>> steps;  // steps[t−1], t = 1..T
  std::vector<Mat> emitted;                     // indexed by element
};

ExactIm build_exact_im_sparse(const ControlledGateSet& gs,
                              const ProductInitialState& state, int T,
                              size_t cap = kDefaultExplosionCap);

// Dense TemporalMps of the first `horizon` legs (default: all) with bonds
// labelled by H(t) and the all-ones covector over H(horizon) on top.
TemporalMps exact_im_to_mps(const ExactIm& im, int horizon = -1,
                            size_t max_entries = 20'000'000);

TemporalMps build_exact_im(const ControlledGateSet& gs,
                           const ProductInitialState& state, int T);

// Folded local tensor W[(g, a a' b b'), g'] (MPS layout: left = H_in,
// phys = ((a·q + a')·q + b)·q + b', right = H_out).
Tensor3 im_local_tensor(const ControlledGateSet& gs,
                        const ProductInitialState& state,
                        const std::vector<GroupElement>& H_in,
                        const std::vector<GroupElement>& H_out,
                        double tol = kImDedupTol);

double contract_with_process(const ExactIm& im, const Mat& rho_imp,
                             const std::vector<QuantumChannel>& channels,
                             const Mat& obs);
cplx contract_with_process_complex(const ExactIm& im, const Mat& rho,
                                   const std::vector<QuantumChannel>& channels,
                                   const Mat& obs);

struct SolvableReport {
  double residual;
  int iterations;
};

// Pair state ordered (odd site, even site). The solvability condition is
// Tr_odd ρ = I/q weighted by the left steady state of the pair transfer map.
SolvableReport check_solvable_state(const Vec& pair_vector,
                                    const ControlledGateSet& gs);
SolvableReport check_solvable_state(const Mat& pair_density,
                                    const ControlledGateSet& gs);

}  // namespace imlab

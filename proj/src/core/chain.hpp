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

#include <cstddef>
#include <vector>

#include "channel.hpp"
#include "gates.hpp"
#include "linalg.hpp"

namespace imlab {

// Pure state on a list of slots with mixed local dimensions; the last slot
// varies fastest.
class DenseState {
 public:
  explicit DenseState(size_t max_bytes);

  size_t slots() const { return dims_.size(); }
  int dim(size_t slot) const { return dims_[slot]; }
  size_t size() const { return static_cast<size_t>(amp_.size()); }
  const Vec& amplitudes() const { return amp_; }

  // |this⟩ ⊗ |v⟩ where v lives on new slots of the given dimensions.
  // Returns the index of the first new slot.
  size_t append(const Vec& v, const std::vector<int>& dims);
  // Appends a purification of the density matrix rho on new slots (plus one
  // ancilla slot when rho is mixed). Returns the index of the first new slot.
  size_t append_mixed(const Mat& rho, const std::vector<int>& dims);
  // Applies op to the listed slots, first listed slot slowest.
  void apply(const Mat& op, const std::vector<size_t>& slots);
  // Stinespring dilation of a channel on one slot; appends the ancilla.
  void dilate(const std::vector<Mat>& kraus, size_t slot);
  // ⟨this| op_slot |other⟩
  cplx inner(const DenseState& other, const Mat& op, size_t slot) const;
  // Unnormalized reduced density matrix on the listed slots, first slowest.
  Mat reduced(const std::vector<size_t>& slots) const;

 private:
  void check_size(size_t n) const;
  size_t max_bytes_;
  std::vector<int> dims_;
  Vec amp_;
};

constexpr size_t kDefaultChainBytes = size_t{512} << 20;

struct ChainOptions {
  // Additional bath pairs beyond the light cone 2T+1.
  int extra_pairs = 0;
  size_t max_bytes = kDefaultChainBytes;
};

// Tr[O Φ_T(O' ρ_imp ⊗ ρ_bath)] on the finite chain −(2T+2·extra)..0 with
// the impurity at 0. channels has length T−1 and acts after steps 1..T−1.
cplx brute_force_two_point(const ControlledGateSet& gs, const BathState& state,
                           const Mat& rho_imp,
                           const std::vector<QuantumChannel>& channels,
                           const Mat& O_prime, const Mat& obs, int T,
                           const ChainOptions& opt = {});

double brute_force_observable(const ControlledGateSet& gs, const BathState& state,
                              const Mat& rho_imp,
                              const std::vector<QuantumChannel>& channels,
                              const Mat& obs, int T, const ChainOptions& opt = {});

}  // namespace imlab

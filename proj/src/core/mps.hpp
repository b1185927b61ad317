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

#include <string>
#include <vector>

#include "channel.hpp"
#include "group.hpp"
#include "linalg.hpp"

namespace imlab {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Row-major (left, phys, right) tensor.
struct Tensor3 {
  int left = 1;
  int phys = 1;
  int right = 1;
  std::vector<cplx> data;

  Tensor3() = default;
  Tensor3(int l, int p, int r)
      : left(l), phys(p), right(r), data(static_cast<size_t>(l) * p * r) {}

  cplx& operator()(int l, int p, int r) {
    return data[(static_cast<size_t>(l) * phys + p) * right + r];
  }
  const cplx& operator()(int l, int p, int r) const {
    return data[(static_cast<size_t>(l) * phys + p) * right + r];
  }
  // (left·phys) × right and left × (phys·right) views of the same storage.
  Eigen::Map<RowMat> left_matrix() { return {data.data(), left * phys, right}; }
  Eigen::Map<const RowMat> left_matrix() const {
    return {data.data(), left * phys, right};
  }
  Eigen::Map<RowMat> right_matrix() { return {data.data(), left, phys * right}; }
  Eigen::Map<const RowMat> right_matrix() const {
    return {data.data(), left, phys * right};
  }
};

// Influence matrix as an MPS over T time legs. Each leg is stored in compact
// form (a, b, b'), index (a·q + b)·q + b', where a is the impurity value
// received by the bath and (b, b') are the matrix entries of the state handed
// to the impurity. The folded q⁴ leg carries an extra δ_{a a'}.
struct TemporalMps {
  int q = 2;
  std::vector<Tensor3> sites;
  // Group labels of each bond (cuts 0..T), filled by the exact builder.
  std::vector<std::vector<GroupElement>> bond_labels;

  int T() const { return static_cast<int>(sites.size()); }
  int phys() const { return q * q * q; }
  // Bond between legs t and t+1, t = 0..T.
  int bond_dim(int t) const;
  // Leg t (1-based) with the folded physical index ((a·q + a')·q + b)·q + b'.
  Tensor3 folded_site(int t) const;
};

// Contraction with the all-identity process: input I/q on every receive leg,
// trace on every output leg. Equals 1 for a trace-preserving bath.
cplx contract_identity_process(const TemporalMps& mps);

// Dense IM vector, leg 1 slowest, compact legs. TooLarge beyond max_entries.
Vec to_dense(const TemporalMps& mps, size_t max_entries = size_t{1} << 24);

double vector_norm(const TemporalMps& mps);

struct CompressResult {
  TemporalMps mps;
  // Relative discarded weight Σ_{k ≥ kept} s_k² / Σ_k s_k² at cuts 1..T−1.
  std::vector<double> discarded;
};

// Left QR sweep followed by a right-to-left truncated SVD sweep keeping
// min(chi_max, #{s_k > cutoff·s_0}) values per cut. No renormalization.
CompressResult compress(const TemporalMps& mps, int chi_max, double cutoff);

struct TeeProfile {
  std::vector<double> per_cut_entropy;  // cuts 1..T−1, nats
  double max_entropy = 0;
  int argmax_cut = 0;
  int T = 0;
  int chi_used = -1;                   // −1: exact
  std::vector<int> schmidt_rank;       // cuts 1..T−1
};

TeeProfile temporal_entanglement(const TemporalMps& mps, int chi_used = -1);

// Threads rho_imp through the IM with channels between steps and returns
// Tr[O ρ(T)]. The complex variant accepts non-Hermitian rho (e.g. O'ρ).
double contract_with_process(const TemporalMps& mps, const Mat& rho_imp,
                             const std::vector<QuantumChannel>& channels,
                             const Mat& obs);
cplx contract_with_process_complex(const TemporalMps& mps, const Mat& rho,
                                   const std::vector<QuantumChannel>& channels,
                                   const Mat& obs);

void require_channels(const std::vector<QuantumChannel>& channels, int T, int q);

// CSV rows T,cut,entropy,max_entropy,chi (header included when requested).
std::string tee_csv(const std::vector<TeeProfile>& profiles, bool header = true);

}  // namespace imlab

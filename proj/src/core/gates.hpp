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

#include "linalg.hpp"

namespace imlab {

// Controlled-SWAP gate family U = SWAP · Σ_a u_a ⊗ |a⟩⟨a|, so that
// U|x⟩⊗|a⟩ = |a⟩⊗u_a|x⟩. Two-qudit index = left·q + right.
class ControlledGateSet {
 public:
  int q() const { return q_; }
  const std::vector<Mat>& controlled() const { return u_; }
  const Mat& u(int a) const { return u_[static_cast<size_t>(a)]; }
  const Mat& two_qudit() const { return U_; }

 private:
  friend ControlledGateSet make_gate_set(int q, const std::vector<Mat>& us);
  int q_ = 0;
  std::vector<Mat> u_;
  Mat U_;
};

ControlledGateSet make_gate_set(int q, const std::vector<Mat>& unitaries);

// exp(−iKπσ^z), exp(+iKπσ^z)
ControlledGateSet model_a(double K);
// exp(−iKπσ^z), σ^x
ControlledGateSet model_b(double K);
// exp(−iθσ^z), exp(−iθσ^x)
ControlledGateSet model_c(double theta);

// u_a ↦ v u_a v†
ControlledGateSet conjugate_deform(const ControlledGateSet& gs, const Mat& v);

std::string gate_set_to_json(const ControlledGateSet& gs);
ControlledGateSet gate_set_from_json(const std::string& text);

struct ProductInitialState {
  Vec psi_e;  // even sites
  Vec psi_o;  // odd sites
};

ProductInitialState make_product_state(const Vec& psi_e, const Vec& psi_o);

// Two-site bath state on a pair (odd site 2x−1, even site 2x), odd site is
// the slower index. Product states are the special case ψ_o ⊗ ψ_e.
class BathState {
 public:
  BathState(const ProductInitialState& p);  // NOLINT: implicit on purpose
  static BathState pair_density(int q, const Mat& rho);
  static BathState pair_vector(int q, const Vec& psi);

  int q() const { return q_; }
  bool is_product() const { return product_; }
  const ProductInitialState& product() const;
  const Mat& density() const { return rho_; }

  // Σ_c over odd values: unnormalized even-site state given odd value c.
  Mat even_given_odd(int c) const;
  Mat even_marginal() const;
  // Probabilities of odd-site computational values.
  RVec odd_probabilities() const;

 private:
  BathState() = default;
  int q_ = 0;
  bool product_ = false;
  ProductInitialState prod_;
  Mat rho_;
};

struct ImpurityObservable {
  Mat matrix;
  std::string label;
};

ImpurityObservable make_observable(const Mat& m, const std::string& label);

}  // namespace imlab

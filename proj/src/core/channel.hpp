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

struct QuantumChannel {
  std::vector<Mat> kraus;
  std::string label;

  int q() const { return static_cast<int>(kraus.front().rows()); }
  Mat apply(const Mat& x) const;
  // True when diag(K[X]) = r · Tr X for a fixed vector r.
  bool homogeneous(RVec* r = nullptr) const;
};

// ‖Σ K†K − I‖_max
double trace_preservation_residual(const std::vector<Mat>& kraus);

// Validates shapes and trace preservation to 1e-10.
QuantumChannel make_channel(std::vector<Mat> kraus, const std::string& label);

QuantumChannel identity_channel(int q);
// Erase the impurity and prepare rho_re.
QuantumChannel causal_break_channel(const Mat& rho_re);
// (1 − p)·identity + p·erase-prepare(rho_re).
QuantumChannel mixed_channel(double p, const Mat& rho_re);

// "identity", "break:+", "break:0", "mix:p=<p>" (mixing towards |+⟩⟨+|).
QuantumChannel channel_preset(const std::string& name, int q);

// {"label": ..., "kraus": [[[ [re,im], ... ], ...], ...]}
QuantumChannel channel_from_json(const std::string& text);

Mat plus_state_density(int q);

}  // namespace imlab

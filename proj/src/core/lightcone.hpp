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

#include <functional>
#include <vector>

#include "gates.hpp"
#include "mps.hpp"

namespace imlab {

constexpr int kUnboundedChi = 1 << 30;

// Builds the influence matrix by sweeping the bath from the far edge of the
// light cone towards the impurity, one site per half-step, compressing to
// chi_max after each half-step. Every visited odd-site boundary is the IM of
// a shorter horizon, so horizons 1..T are produced in increasing order and
// handed to `visit` before the final horizon-T IM is returned.
TemporalMps grow_im_truncated(
    const ControlledGateSet& gs, const BathState& state, int T, int chi_max,
    double cutoff = 1e-14,
    const std::function<void(int horizon, const TemporalMps& im)>& visit = {});

// Max-TEE profile for every horizon 1..T from a single sweep.
std::vector<TeeProfile> tee_series_truncated(const ControlledGateSet& gs,
                                             const BathState& state, int T,
                                             int chi_max, double cutoff = 1e-14);

// Same series from one exact (group-labelled) build; product states only.
std::vector<TeeProfile> tee_series_exact(const ControlledGateSet& gs,
                                         const ProductInitialState& state,
                                         int T);

}  // namespace imlab

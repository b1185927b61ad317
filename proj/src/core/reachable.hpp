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
#include <optional>
#include <string>
#include <vector>

#include "gates.hpp"
#include "group.hpp"

namespace imlab {

constexpr size_t kDefaultExplosionCap = 5'000'000;

// H(T) for T = 0..T_max. Elements are stored once, in order of first
// appearance, so H(T) is the prefix elements[0, counts[T]).
class ReachableSet {
 public:
  int q() const { return q_; }
  int t_max() const { return static_cast<int>(counts_.size()) - 1; }
  double dedup_tol() const { return index_.tol(); }
  const std::vector<size_t>& counts() const { return counts_; }
  size_t count(int T) const { return counts_.at(static_cast<size_t>(T)); }
  const std::vector<GroupElement>& elements() const { return index_.elements(); }
  const GroupElement& element(size_t i) const { return index_.at(i); }
  std::vector<GroupElement> per_time(int T) const;
  // Projective images g_a of the controls.
  const std::vector<GroupElement>& generators() const { return gens_; }
  std::optional<size_t> find(const GroupElement& g) const {
    return index_.find(g);
  }

 private:
  friend ReachableSet reachable_set(const ControlledGateSet&, int, double,
                                    size_t);
  ReachableSet(int q, double tol) : q_(q), index_(q, tol) {}
  int q_;
  GroupIndex index_;
  std::vector<size_t> counts_;
  std::vector<GroupElement> gens_;
};

ReachableSet reachable_set(const ControlledGateSet& gs, int T_max, double tol,
                           size_t cap = kDefaultExplosionCap);

std::string counts_csv(const ReachableSet& rs);

enum class GrowthClass { Saturation, Polynomial, Exponential };
const char* growth_class_name(GrowthClass c);

struct GrowthConfig {
  int min_points = 8;
  // Saturation: counts constant over the trailing fraction of the window.
  double saturation_fraction = 1.0 / 3.0;
  // Fit window: trailing fraction of the window.
  double fit_fraction = 0.5;
};

struct GrowthVerdict {
  GrowthClass class_label;
  std::optional<double> fit_exponent;
  int t_min;
  int t_max;
  double residual;
  double residual_loglog;
  double residual_loglin;
};

GrowthVerdict classify_growth(const ReachableSet& rs,
                              const GrowthConfig& cfg = {});

}  // namespace imlab

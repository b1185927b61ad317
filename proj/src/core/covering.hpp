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

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "group.hpp"

namespace imlab {

// Finite subset of PU(2) with nearest-point lookup.
class CoveringGrid {
 public:
  double delta() const { return delta_; }
  std::array<int, 3> grid_dims() const { return dims_; }
  const std::vector<GroupElement>& points() const { return points_; }
  size_t nearest_index(const GroupElement& g) const;

  // Arbitrary point set, e.g. a reachable set; dims are reported as zero.
  static CoveringGrid from_points(double delta, std::vector<GroupElement> pts);

 private:
  friend CoveringGrid build_covering(double delta);
  struct Tree;
  void build_tree();
  double delta_ = 0;
  std::array<int, 3> dims_{0, 0, 0};
  std::vector<GroupElement> points_;
  std::shared_ptr<const Tree> tree_;
};

// Hopf-parametrized grid g(θ, φ, ψ) with N_θ = ⌈π/(2δ)⌉ cell-centred values
// of θ and N_φ = N_ψ = ⌈2π/δ⌉ values of each angle. Every element of PU(2)
// is within δ of the grid in killing_distance.
CoveringGrid build_covering(double delta);

GroupElement snap(const CoveringGrid& grid, const GroupElement& g);

std::string covering_json(const CoveringGrid& grid);

}  // namespace imlab

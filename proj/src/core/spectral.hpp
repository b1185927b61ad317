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
#include <string>
#include <vector>

#include "gates.hpp"

namespace imlab {

constexpr int kDefaultMaxFloquetL = 14;

// One Floquet period on an open chain of L sites, sites 0..L−1 with site 0
// slowest: the even layer acts on bonds (0,1), (2,3), ..., (L−2, L−1), then
// the odd layer on (1,2), ..., (L−3, L−2).
Mat build_floquet_obc(const ControlledGateSet& gs, int L,
                      int max_L = kDefaultMaxFloquetL);

constexpr double kDegenerateSpacing = 1e-12;

// Ratios min(s_n, s_{n+1}) / max(s_n, s_{n+1}) of consecutive spacings of the
// sorted phases. With wrap, the spacing from the largest phase back to the
// smallest (plus 2π) closes the circle and there are as many ratios as
// phases; otherwise there are n − 2. A pair whose larger spacing is below
// kDegenerateSpacing gives 0.
std::vector<double> spacing_ratios(std::vector<double> phases, bool wrap = false);

// Number of spacings below kDegenerateSpacing, same conventions.
size_t degenerate_spacings(std::vector<double> phases, bool wrap = false);

enum class RatioEnsemble { Poisson, COE };

std::function<double(double)> reference_distribution(RatioEnsemble kind);

struct SpectrumResult {
  int L = 0;
  std::vector<double> phases;  // ascending, in (−π, π]
  std::vector<double> ratios;
  double mean_ratio = 0;
  std::vector<double> bin_edges;  // 26 edges on [0, 1]
  std::vector<double> densities;  // 25 bins
  size_t degenerate_count = 0;
  double degenerate_fraction = 0;
  double unimodularity_error = 0;  // max ||λ| − 1|
};

constexpr int kRatioBins = 25;

std::vector<double> ratio_histogram(const std::vector<double>& ratios,
                                    int bins = kRatioBins);

SpectrumResult lss_report(const ControlledGateSet& gs, int L, bool wrap = true,
                          int max_L = kDefaultMaxFloquetL);

std::string spectrum_csv(const SpectrumResult& r);
std::string spectrum_summary_json(const SpectrumResult& r);

}  // namespace imlab

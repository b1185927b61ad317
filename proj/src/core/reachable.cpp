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

#include "reachable.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace imlab {

std::vector<GroupElement> ReachableSet::per_time(int T) const {
  const size_t n = count(T);
  return {elements().begin(), elements().begin() + static_cast<long>(n)};
}

ReachableSet reachable_set(const ControlledGateSet& gs, int T_max, double tol,
                           size_t cap) {
  if (T_max < 0) fail(ErrorKind::InvalidArgument, "T_max must be >= 0");
  if (!(tol >= 1e-12 && tol <= 1e-6))
    fail(ErrorKind::InvalidArgument, "tol must lie in [1e-12, 1e-6]");
  ReachableSet rs(gs.q(), tol);
  for (const Mat& u : gs.controlled()) rs.gens_.push_back(project_to_group(u));

  // Pair generators g_a g_b, deduplicated.
  GroupIndex pairs(gs.q(), tol);
  for (const auto& ga : rs.gens_)
    for (const auto& gb : rs.gens_) pairs.insert(multiply(ga, gb));

  rs.index_.insert(GroupElement::identity(gs.q()));
  rs.counts_.push_back(1);
  size_t frontier_begin = 0;
  for (int t = 1; t <= T_max; ++t) {
    const size_t frontier_end = rs.index_.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      const GroupElement h = rs.index_.at(i);
      for (const auto& s : pairs.elements()) {
        rs.index_.insert(multiply(h, s));
        if (rs.index_.size() > cap)
          fail(ErrorKind::ExplosionGuard,
               "reachable set exceeded " + std::to_string(cap) +
                   " elements at T=" + std::to_string(t));
      }
    }
    frontier_begin = frontier_end;
    rs.counts_.push_back(rs.index_.size());
  }
  return rs;
}

std::string counts_csv(const ReachableSet& rs) {
  std::ostringstream os;
  os << "T,count\n";
  for (size_t t = 0; t < rs.counts().size(); ++t)
    os << t << ',' << rs.counts()[t] << '\n';
  return os.str();
}

const char* growth_class_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::Saturation: return "Saturation";
    case GrowthClass::Polynomial: return "Polynomial";
    case GrowthClass::Exponential: return "Exponential";
  }
  return "Unknown";
}

namespace {

struct LineFit {
  double slope;
  double rms;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  const double slope = den != 0 ? (n * sxy - sx * sy) / den : 0.0;
  const double icpt = (sy - slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (icpt + slope * x[i]);
    ss += r * r;
  }
  return {slope, std::sqrt(ss / n)};
}

}  // namespace

GrowthVerdict classify_growth(const ReachableSet& rs, const GrowthConfig& cfg) {
  const int T = rs.t_max();
  if (T < cfg.min_points)
    fail(ErrorKind::InsufficientData,
         "need at least " + std::to_string(cfg.min_points) + " time points");
  const auto& c = rs.counts();
  GrowthVerdict v{};
  v.t_max = T;

  const int n_sat = std::max(2, static_cast<int>(std::ceil(T * cfg.saturation_fraction)));
  bool constant = true;
  for (int t = T - n_sat + 1; t <= T; ++t)
    if (c[static_cast<size_t>(t)] != c[static_cast<size_t>(T)]) constant = false;
  if (constant) {
    v.class_label = GrowthClass::Saturation;
    v.t_min = T - n_sat + 1;
    v.residual = v.residual_loglog = v.residual_loglin = 0.0;
    return v;
  }

  const int n_fit = std::max(3, static_cast<int>(std::ceil(T * cfg.fit_fraction)));
  v.t_min = T - n_fit + 1;
  std::vector<double> lt, tt, lc;
  for (int t = v.t_min; t <= T; ++t) {
    lt.push_back(std::log(static_cast<double>(t)));
    tt.push_back(static_cast<double>(t));
    lc.push_back(std::log(static_cast<double>(c[static_cast<size_t>(t)])));
  }
  const LineFit pl = fit_line(lt, lc);
  const LineFit ex = fit_line(tt, lc);
  v.residual_loglog = pl.rms;
  v.residual_loglin = ex.rms;
  if (pl.rms < ex.rms) {
    v.class_label = GrowthClass::Polynomial;
    v.fit_exponent = pl.slope;
    v.residual = pl.rms;
  } else {
    v.class_label = GrowthClass::Exponential;
    v.fit_exponent = ex.slope;
    v.residual = ex.rms;
  }
  return v;
}

}  // namespace imlab

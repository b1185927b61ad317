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

#include "covering.hpp"

#include <cmath>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "errors.hpp"
#include "json.hpp"

namespace imlab {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

using Point4 = bg::model::point<double, 4, bg::cs::cartesian>;
using Entry = std::pair<Point4, size_t>;

struct CoveringGrid::Tree {
  bgi::rtree<Entry, bgi::rstar<16>> rtree;
};

namespace {

Point4 to_point(const std::array<double, 4>& v, double sign) {
  Point4 p;
  bg::set<0>(p, sign * v[0]);
  bg::set<1>(p, sign * v[1]);
  bg::set<2>(p, sign * v[2]);
  bg::set<3>(p, sign * v[3]);
  return p;
}

}  // namespace

void CoveringGrid::build_tree() {
  std::vector<Entry> entries;
  entries.reserve(2 * points_.size());
  for (size_t i = 0; i < points_.size(); ++i) {
    entries.emplace_back(to_point(points_[i].quat(), 1.0), i);
    entries.emplace_back(to_point(points_[i].quat(), -1.0), i);
  }
  auto t = std::make_shared<Tree>();
  t->rtree = bgi::rtree<Entry, bgi::rstar<16>>(entries.begin(), entries.end());
  tree_ = t;
}

CoveringGrid CoveringGrid::from_points(double delta,
                                       std::vector<GroupElement> pts) {
  if (pts.empty()) fail(ErrorKind::InvalidArgument, "empty covering");
  for (const auto& p : pts)
    if (p.q() != 2)
      fail(ErrorKind::UnsupportedDimension, "coverings are defined for q = 2");
  CoveringGrid g;
  g.delta_ = delta;
  g.points_ = std::move(pts);
  g.build_tree();
  return g;
}

CoveringGrid build_covering(double delta) {
  if (!(delta > 0 && delta <= M_PI / 2 + 1e-15))
    fail(ErrorKind::DeltaOutOfRange, "delta must lie in (0, pi/2]");
  const int nt = static_cast<int>(std::ceil(M_PI / (2 * delta) - 1e-12));
  const int np = static_cast<int>(std::ceil(2 * M_PI / delta - 1e-12));
  GroupIndex idx(2, 1e-9);
  for (int i = 0; i < nt; ++i) {
    const double th = (i + 0.5) * (M_PI / 2) / nt;
    const double c = std::cos(th), s = std::sin(th);
    for (int j = 0; j < np; ++j) {
      const double ph = 2 * M_PI * j / np;
      for (int k = 0; k < np; ++k) {
        const double ps = 2 * M_PI * k / np;
        // [[c e^{iφ}, s e^{iψ}], [−s e^{−iψ}, c e^{−iφ}]]
        idx.insert(GroupElement::from_quaternion(c * std::cos(ph), -s * std::sin(ps),
                                                 -s * std::cos(ps),
                                                 -c * std::sin(ph)));
      }
    }
  }
  CoveringGrid g = CoveringGrid::from_points(delta, idx.elements());
  g.dims_ = {nt, np, np};
  return g;
}

size_t CoveringGrid::nearest_index(const GroupElement& g) const {
  if (g.q() != 2)
    fail(ErrorKind::UnsupportedDimension, "coverings are defined for q = 2");
  std::vector<Entry> hits;
  tree_->rtree.query(bgi::nearest(to_point(g.quat(), 1.0), 8),
                     std::back_inserter(hits));
  size_t best = std::numeric_limits<size_t>::max();
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& h : hits) {
    const double d = distance(points_[h.second], g);
    if (d < best_d || (d == best_d && h.second < best)) {
      best_d = d;
      best = h.second;
    }
  }
  return best;
}

GroupElement snap(const CoveringGrid& grid, const GroupElement& g) {
  return grid.points()[grid.nearest_index(g)];
}

std::string covering_json(const CoveringGrid& grid) {
  nlohmann::json j;
  j["delta"] = grid.delta();
  j["grid_dims"] = {grid.grid_dims()[0], grid.grid_dims()[1],
                    grid.grid_dims()[2]};
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : grid.points())
    pts.push_back({p.quat()[0], p.quat()[1], p.quat()[2], p.quat()[3]});
  j["points"] = pts;
  return j.dump();
}

}  // namespace imlab

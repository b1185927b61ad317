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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "linalg.hpp"

namespace imlab {

// Element of PU(q), stored through a canonical special-unitary representative.
// For q = 2 the representative is the unit quaternion (w, x, y, z) with
// U = w·I − i(x σ^x + y σ^y + z σ^z), sign fixed so that the first component
// with magnitude > 1e-12 is positive. For q > 2 the representative is the
// matrix with unit determinant whose first significant entry has argument in
// (−π/q, π/q].
class GroupElement {
 public:
  GroupElement() = default;

  int q() const { return q_; }
  const std::array<double, 4>& quat() const { return quat_; }
  Mat rep() const;

  static GroupElement identity(int q);
  // Takes an arbitrary (w, x, y, z), normalizes and canonicalizes.
  static GroupElement from_quaternion(double w, double x, double y, double z);

 private:
  friend GroupElement project_to_group(const Mat& u);
  friend GroupElement multiply(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);
  static GroupElement from_special_matrix(Mat m);

  int q_ = 2;
  std::array<double, 4> quat_{1.0, 0.0, 0.0, 0.0};
  Mat mat_;  // q > 2 only
};

GroupElement project_to_group(const Mat& u);
GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);

// SO(3) rotation angle of a⁻¹b, in [0, π]. q = 2 only.
double distance(const GroupElement& a, const GroupElement& b);
// Bi-invariant metric from the Killing form normalization, distance/√2.
double killing_distance(const GroupElement& a, const GroupElement& b);

// Projective closeness test used for deduplication: max-norm difference of
// representatives modulo the centre, ≤ tol.
bool nearly_equal(const GroupElement& a, const GroupElement& b, double tol);

// Exact (bitwise) equality of canonical representatives.
bool identical(const GroupElement& a, const GroupElement& b);

// Haar-random unitary and its projective image.
Mat sample_haar_unitary(int q, std::uint64_t seed);
GroupElement sample_haar(int q, std::uint64_t seed);

// Insertion-ordered set of group elements with tolerance-aware lookup.
class GroupIndex {
 public:
  GroupIndex(int q, double tol);

  std::optional<size_t> find(const GroupElement& g) const;
  // Returns (index, inserted).
  std::pair<size_t, bool> insert(const GroupElement& g);

  size_t size() const { return elems_.size(); }
  const GroupElement& at(size_t i) const { return elems_[i]; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  double tol() const { return tol_; }

 private:
  using Key = std::array<std::int64_t, 4>;
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };
  Key key_of(const std::array<double, 4>& v) const;
  std::array<double, 4> coords(const GroupElement& g) const;
  void candidate_keys(const std::array<double, 4>& v,
                      std::vector<Key>& out) const;

  int q_;
  double tol_;
  double res_;
  std::vector<GroupElement> elems_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
};

}  // namespace imlab

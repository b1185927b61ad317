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

#include <random>

#include "catch_amalgamated.hpp"
#include "channel.hpp"
#include "test_support.hpp"

using namespace imlab;
using namespace imlab::testing;

namespace {

// X ↦ (1 − p) X + p Tr(X) ρ_re, the mixed map written out directly.
Mat mix_oracle(double p, const Mat& rho_re, const Mat& x) {
  return (1 - p) * x + p * x.trace() * rho_re;
}

}  // namespace

TEST_CASE("presets act as their defining maps") {
  std::mt19937_64 rng(1);
  for (int q : {2, 3}) {
    Mat x = random_density(q, rng) + kI * random_density(q, rng);
    CHECK(max_abs(channel_preset("identity", q).apply(x) - x) <= 1e-14);
    CHECK(max_abs(channel_preset("break:+", q).apply(x) -
                  mix_oracle(1, plus_state_density(q), x)) <= 1e-13);
    Mat zero = proj(ket(q, 0));
    CHECK(max_abs(channel_preset("break:0", q).apply(x) - mix_oracle(1, zero, x)) <=
          1e-13);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      auto c = channel_preset("mix:p=" + std::to_string(p), q);
      CHECK(trace_preservation_residual(c.kraus) <= 1e-12);
      CHECK(max_abs(c.apply(x) - mix_oracle(p, plus_state_density(q), x)) <= 1e-13);
    }
  }
  CHECK(channel_preset("identity", 2).label == "identity");
  CHECK(channel_preset("mix:p=0.5", 2).label == "mix:p=0.5");
}

TEST_CASE("mixing endpoints") {
  std::mt19937_64 rng(2);
  Mat rho = random_density(2, rng);
  Mat x = random_density(2, rng);
  CHECK(max_abs(mixed_channel(0, rho).apply(x) - identity_channel(2).apply(x)) <=
        1e-14);
  CHECK(max_abs(mixed_channel(1, rho).apply(x) - causal_break_channel(rho).apply(x)) <=
        1e-13);
}

TEST_CASE("channel errors") {
  Mat rho = plus_state_density(2);
  CHECK(error_kind([&] { mixed_channel(-0.1, rho); }) == kind(ErrorKind::POutOfRange));
  CHECK(error_kind([&] { mixed_channel(1.5, rho); }) == kind(ErrorKind::POutOfRange));
  CHECK(error_kind([] { channel_preset("mix:p=2", 2); }) ==
        kind(ErrorKind::POutOfRange));
  CHECK(error_kind([] { channel_preset("mix:p=abc", 2); }) ==
        kind(ErrorKind::ParseError));
  CHECK(error_kind([] { channel_preset("dephase", 2); }) == kind(ErrorKind::ParseError));
  CHECK(error_kind([] { make_channel({0.5 * Mat::Identity(2, 2)}, "half"); }) ==
        kind(ErrorKind::NonTracePreserving));
  CHECK(error_kind([] { make_channel({}, "none"); }) == kind(ErrorKind::InvalidArgument));
  CHECK(error_kind([] {
          make_channel({Mat::Identity(2, 2), Mat::Zero(3, 3)}, "bad");
        }) == kind(ErrorKind::DimensionMismatch));
  Mat bad = Mat::Identity(2, 2);
  bad(0, 0) = -1.0;
  CHECK(error_kind([&] { causal_break_channel(bad); }) ==
        kind(ErrorKind::NotADensityMatrix));
}

TEST_CASE("homogeneity detects erase-prepare maps") {
  RVec r;
  REQUIRE(channel_preset("break:+", 2).homogeneous(&r));
  CHECK(std::abs(r(0) - 0.5) <= 1e-14);
  CHECK(std::abs(r(1) - 0.5) <= 1e-14);
  REQUIRE(channel_preset("break:0", 3).homogeneous(&r));
  CHECK(std::abs(r(0) - 1.0) <= 1e-14);
  CHECK_FALSE(channel_preset("identity", 2).homogeneous());
  CHECK_FALSE(channel_preset("mix:p=0.3", 2).homogeneous());
  // Full dephasing followed by a fixed preparation is also homogeneous.
  std::vector<Mat> k;
  for (int i = 0; i < 2; ++i) k.push_back(plus_ket(2) * ket(2, i).adjoint());
  CHECK(make_channel(k, "measure-prepare").homogeneous());
}

TEST_CASE("channel JSON") {
  auto c = channel_from_json(
      R"({"label":"flip","kraus":[[[[0,0],[1,0]],[[1,0],[0,0]]]]})");
  CHECK(c.label == "flip");
  CHECK(max_abs(c.apply(proj(ket(2, 0))) - proj(ket(2, 1))) == 0.0);
  CHECK(error_kind([] { channel_from_json(R"({"kraus": 3)"); }) ==
        kind(ErrorKind::ParseError));
  CHECK(error_kind([] {
          channel_from_json(R"({"kraus":[[[[1,0],[0,0]],[[0,0]]]]})");
        }) == kind(ErrorKind::DimensionMismatch));
}

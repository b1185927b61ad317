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

#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "chain.hpp"
#include "influence.hpp"
#include "lightcone.hpp"
#include "test_support.hpp"

using namespace imlab;
using namespace imlab::testing;

namespace {

const double kLn2 = std::log(2.0);

std::vector<QuantumChannel> repeat(const QuantumChannel& c, int n) {
  return std::vector<QuantumChannel>(static_cast<size_t>(std::max(0, n)), c);
}

}  // namespace

TEST_CASE("untruncated sweep reproduces the exact entropies") {
  auto st = make_product_state(plus_ket(2), plus_ket(2));
  for (auto gs : {model_a(kLn2), model_b(kLn2), model_c(M_PI / 3)}) {
    auto exact = tee_series_exact(gs, st, 6);
    auto swept = tee_series_truncated(gs, BathState(st), 6, kUnboundedChi);
    REQUIRE(swept.size() == exact.size());
    for (size_t h = 0; h < exact.size(); ++h) {
      REQUIRE(swept[h].per_cut_entropy.size() == exact[h].per_cut_entropy.size());
      for (size_t c = 0; c < exact[h].per_cut_entropy.size(); ++c)
        CHECK(std::abs(swept[h].per_cut_entropy[c] - exact[h].per_cut_entropy[c]) <= 1e-9);
    }
    auto t3 = tee_series_truncated(gs, BathState(st), 3, 4096);
    CHECK(std::abs(t3.back().max_entropy - exact[2].max_entropy) <= 1e-9);
  }
}

TEST_CASE("untruncated sweep reproduces exact observables") {
  std::mt19937_64 rng(8);
  for (auto gs : {model_a(kLn2), model_b(kLn2), model_c(M_PI / 3)}) {
    auto st = make_product_state(random_vec(2, rng), random_vec(2, rng));
    const int T = 6;
    auto im = grow_im_truncated(gs, BathState(st), T, kUnboundedChi);
    auto ex = build_exact_im_sparse(gs, st, T);
    Mat rho = random_density(2, rng);
    for (const char* ch : {"identity", "break:+", "mix:p=0.5"}) {
      auto c = repeat(channel_preset(ch, 2), T - 1);
      CHECK(std::abs(contract_with_process(im, rho, c, pauli_y()) -
                     contract_with_process(ex, rho, c, pauli_y())) <= 1e-9);
    }
  }
}

TEST_CASE("horizons are visited in order") {
  std::vector<int> seen;
  auto st = make_product_state(plus_ket(2), plus_ket(2));
  grow_im_truncated(model_c(M_PI / 3), BathState(st), 5, 16, 1e-14,
                    [&](int h, const TemporalMps& im) {
                      CHECK(im.T() == h);
                      seen.push_back(h);
                    });
  CHECK(seen == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("pair states match the finite chain") {
  std::mt19937_64 rng(9);
  Vec pair = random_vec(4, rng);
  auto bath = BathState::pair_vector(2, pair);
  Mat rho = random_density(2, rng);
  for (auto gs : {model_b(kLn2), model_c(M_PI / 3)}) {
    const int T = 4;
    auto im = grow_im_truncated(gs, bath, T, kUnboundedChi);
    for (const char* ch : {"identity", "break:+"}) {
      auto c = repeat(channel_preset(ch, 2), T - 1);
      CHECK(std::abs(contract_with_process(im, rho, c, pauli_x()) -
                     brute_force_observable(gs, bath, rho, c, pauli_x(), T)) <= 1e-9);
    }
  }
}

TEST_CASE("truncation bounds the bond and keeps trace") {
  auto st = make_product_state(plus_ket(2), plus_ket(2));
  auto im = grow_im_truncated(model_c(M_PI / 3), BathState(st), 10, 8);
  for (int t = 0; t <= im.T(); ++t) CHECK(im.bond_dim(t) <= 8);
  // Truncation is not trace preserving, only close to it.
  CHECK(std::abs(contract_identity_process(im) - cplx(1.0)) <= 1e-2);
  auto prof = temporal_entanglement(im, 8);
  CHECK(prof.max_entropy <= std::log(8.0) + 1e-10);
  CHECK(prof.chi_used == 8);
}

TEST_CASE("sweep arguments") {
  auto st = make_product_state(plus_ket(2), plus_ket(2));
  CHECK(error_kind([&] { grow_im_truncated(model_a(kLn2), BathState(st), 0, 4); }) ==
        kind(ErrorKind::InvalidArgument));
  CHECK(error_kind([&] { grow_im_truncated(model_a(kLn2), BathState(st), 3, 0); }) ==
        kind(ErrorKind::InvalidArgument));
}

TEST_CASE("tee CSV rows") {
  auto st = make_product_state(plus_ket(2), plus_ket(2));
  auto csv = tee_csv(tee_series_exact(model_a(kLn2), st, 3));
  CHECK(csv.rfind("T,cut,entropy_nats,max_entropy_nats,chi\n", 0) == 0);
}

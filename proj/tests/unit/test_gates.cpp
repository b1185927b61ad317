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
#include "gates.hpp"
#include "reachable.hpp"
#include "test_support.hpp"

using namespace imlab;
using namespace imlab::testing;

namespace {

// U|x⟩⊗|a⟩ = |a⟩⊗u_a|x⟩, assembled one basis state at a time.
Mat basis_loop_U(const std::vector<Mat>& us) {
  const int q = static_cast<int>(us.size());
  Mat U = Mat::Zero(q * q, q * q);
  for (int x = 0; x < q; ++x)
    for (int a = 0; a < q; ++a) {
      Vec in = kron(ket(q, x), ket(q, a));
      Vec out = kron(ket(q, a), us[a] * ket(q, x));
      for (int r = 0; r < q * q; ++r)
        for (int c = 0; c < q * q; ++c) U(r, c) += out(r) * std::conj(in(c));
    }
  return U;
}

Mat swap2() {
  Mat s = Mat::Zero(4, 4);
  s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1.0;
  return s;
}

Mat diag2(cplx a, cplx b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("identity controls give SWAP exactly") {
  auto gs = make_gate_set(2, {Mat::Identity(2, 2), Mat::Identity(2, 2)});
  CHECK(gs.two_qudit() == swap2());
}

TEST_CASE("sigma-z controls give SWAP times sigma-z on the left input") {
  auto gs = make_gate_set(2, {pauli_z(), pauli_z()});
  Mat expect = swap2() * kron(pauli_z(), Mat::Identity(2, 2));
  CHECK(max_abs(gs.two_qudit() - expect) == 0.0);
  CHECK(unitarity_residual(gs.two_qudit()) <= 1e-12);
}

TEST_CASE("U matches the basis-loop assembly") {
  const double t = M_PI / 3;
  std::vector<Mat> us = {su2_exp(t, 0, 0, 1), su2_exp(t, 1, 0, 0)};
  auto gs = make_gate_set(2, us);
  CHECK(max_abs(gs.two_qudit() - basis_loop_U(us)) <= 1e-15);

  std::mt19937_64 rng(11);
  std::vector<Mat> u3 = {random_unitary(3, rng), random_unitary(3, rng),
                         random_unitary(3, rng)};
  auto g3 = make_gate_set(3, u3);
  CHECK(max_abs(g3.two_qudit() - basis_loop_U(u3)) <= 1e-15);
}

TEST_CASE("named models") {
  auto a0 = model_a(0.0);
  CHECK(max_abs(a0.u(0) - Mat::Identity(2, 2)) == 0.0);
  CHECK(max_abs(a0.u(1) - Mat::Identity(2, 2)) == 0.0);

  auto ah = model_a(0.5);
  CHECK(max_abs(ah.u(0) - (-kI) * pauli_z()) <= 1e-15);

  const double K = std::log(2.0);
  auto a = model_a(K);
  CHECK(max_abs(a.u(0) - diag2(std::polar(1.0, -K * M_PI),
                               std::polar(1.0, K * M_PI))) <= 1e-15);
  CHECK(max_abs(a.u(1) - diag2(std::polar(1.0, K * M_PI),
                               std::polar(1.0, -K * M_PI))) <= 1e-15);

  auto b0 = model_b(0.0);
  CHECK(max_abs(b0.u(0) - Mat::Identity(2, 2)) == 0.0);
  CHECK(max_abs(b0.u(1) - pauli_x()) == 0.0);

  auto c0 = model_c(0.0);
  CHECK(max_abs(c0.u(0) - Mat::Identity(2, 2)) == 0.0);
  CHECK(max_abs(c0.u(1) - Mat::Identity(2, 2)) == 0.0);

  // exp(−iθσ^x) = cos θ − i sin θ σ^x
  const double th = M_PI / 3;
  auto c = model_c(th);
  Mat ex = std::cos(th) * Mat::Identity(2, 2) - kI * std::sin(th) * pauli_x();
  CHECK(max_abs(c.u(1) - ex) <= 1e-15);
}

TEST_CASE("model A controls commute and every U is unitary") {
  for (double K : {0.0, 0.1, 0.25, std::log(2.0), 0.7, 1.3}) {
    auto gs = model_a(K);
    CHECK(max_abs(gs.u(0) * gs.u(1) - gs.u(1) * gs.u(0)) <= 1e-12);
    CHECK(unitarity_residual(gs.two_qudit()) <= 1e-10);
    CHECK(unitarity_residual(model_b(K).two_qudit()) <= 1e-10);
    CHECK(unitarity_residual(model_c(K).two_qudit()) <= 1e-10);
  }
}

TEST_CASE("gate set validation") {
  Mat bad = Mat::Identity(2, 2);
  bad(0, 0) = 1.1;
  CHECK(error_kind([&] { make_gate_set(2, {bad, Mat::Identity(2, 2)}); }) ==
        kind(ErrorKind::NonUnitary));
  CHECK(error_kind([&] { make_gate_set(2, {Mat::Identity(2, 2)}); }) ==
        kind(ErrorKind::DimensionMismatch));
  CHECK(error_kind([&] {
          make_gate_set(2, {Mat::Identity(3, 3), Mat::Identity(3, 3)});
        }) == kind(ErrorKind::DimensionMismatch));
  CHECK(error_kind([&] { conjugate_deform(model_a(0.3), bad); }) ==
        kind(ErrorKind::NonUnitary));
}

TEST_CASE("conjugate_deform") {
  auto gs = model_b(std::log(2.0));
  auto same = conjugate_deform(gs, Mat::Identity(2, 2));
  CHECK(max_abs(same.u(0) - gs.u(0)) == 0.0);
  CHECK(max_abs(same.u(1) - gs.u(1)) == 0.0);

  Mat v = su2_exp(0.01, 0, 1, 0);
  auto d = conjugate_deform(gs, v);
  CHECK(max_abs(d.u(1) - v * pauli_x() * v.adjoint()) <= 1e-15);
}

TEST_CASE("conjugation leaves the growth function unchanged") {
  std::mt19937_64 rng(5);
  for (auto gs : {model_b(std::log(2.0)), model_a(std::log(2.0)),
                  model_b(0.7)}) {
    Mat v = random_unitary(2, rng);
    auto d = conjugate_deform(gs, v);
    CHECK(reachable_set(gs, 10, 1e-9).counts() ==
          reachable_set(d, 10, 1e-9).counts());
  }
  auto c = model_c(M_PI / 3);
  auto dc = conjugate_deform(c, random_unitary(2, rng));
  CHECK(reachable_set(c, 5, 1e-9).counts() == reachable_set(dc, 5, 1e-9).counts());
}

TEST_CASE("JSON round trip is bit-identical") {
  std::mt19937_64 rng(3);
  auto gs = make_gate_set(3, {random_unitary(3, rng), random_unitary(3, rng),
                              random_unitary(3, rng)});
  auto back = gate_set_from_json(gate_set_to_json(gs));
  REQUIRE(back.q() == 3);
  for (int a = 0; a < 3; ++a) CHECK(back.u(a) == gs.u(a));
  CHECK(back.two_qudit() == gs.two_qudit());
  CHECK(gate_set_to_json(back) == gate_set_to_json(gs));

  CHECK(error_kind([] { gate_set_from_json("{\"q\": 2"); }) ==
        kind(ErrorKind::ParseError));
}

TEST_CASE("states and observables are validated") {
  Vec v = Vec::Zero(2);
  v(0) = 1.0;
  v(1) = 0.1;
  CHECK(error_kind([&] { make_product_state(v, plus_ket(2)); }) ==
        kind(ErrorKind::NotNormalized));
  CHECK(error_kind([&] { make_product_state(plus_ket(2), plus_ket(3)); }) ==
        kind(ErrorKind::DimensionMismatch));
  auto s = make_product_state(plus_ket(2), ket(2, 0));
  CHECK(s.psi_o == ket(2, 0));

  Mat nh = pauli_x();
  nh(0, 1) = kI;
  CHECK(error_kind([&] { make_observable(nh, "bad"); }) != -1);
  CHECK(make_observable(pauli_y(), "Y").label == "Y");
}

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
#include <cstring>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "imlab/imlab.h"

namespace {

const double kLn2 = 0.6931471805599453;
const double kPlus[4] = {M_SQRT1_2, 0, M_SQRT1_2, 0};
const double kRhoPlus[8] = {0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0};
const double kX[8] = {0, 0, 1, 0, 1, 0, 0, 0};
const double kZ[8] = {1, 0, 0, 0, 0, 0, -1, 0};
const double kId[8] = {1, 0, 0, 0, 0, 0, 1, 0};

struct Gates {
  imlab_gateset* p = nullptr;
  Gates(char m, double x) { REQUIRE(imlab_gateset_model(m, x, &p) == IMLAB_OK); }
  ~Gates() { imlab_gateset_free(p); }
};

struct Channel {
  imlab_channel* p = nullptr;
  explicit Channel(const char* name) {
    REQUIRE(imlab_channel_preset(name, 2, &p) == IMLAB_OK);
  }
  ~Channel() { imlab_channel_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  imlab_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(imlab_status_name(IMLAB_OK)) == "Ok");
  CHECK(std::string(imlab_status_name(IMLAB_E_ODD_L)) == "OddL");
  CHECK(std::string(imlab_status_name(IMLAB_E_PARSE)) == "ParseError");
  CHECK(std::string(imlab_status_name(999)) == "Unknown");
  CHECK(imlab_status_is_resource(IMLAB_E_EXPLOSION_GUARD) == 1);
  CHECK(imlab_status_is_resource(IMLAB_E_TOO_LARGE) == 1);
  CHECK(imlab_status_is_resource(IMLAB_E_ODD_L) == 0);
  CHECK(std::strlen(imlab_version()) > 0);
}

TEST_CASE("gate sets through the C boundary") {
  Gates a('a', 0.5);
  CHECK(imlab_gateset_q(a.p) == 2);
  double U[32];
  REQUIRE(imlab_gateset_two_qudit(a.p, U) == IMLAB_OK);
  // U|x, c⟩ = |c⟩ ⊗ u_c|x⟩ with u_0 = −iσ^z, u_1 = iσ^z.
  const double expect_im[16] = {-1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1};
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(U[2 * i]) <= 1e-15);
    CHECK(std::abs(U[2 * i + 1] - expect_im[i]) <= 1e-15);
  }

  char* json = nullptr;
  REQUIRE(imlab_gateset_to_json(a.p, &json) == IMLAB_OK);
  imlab_gateset* back = nullptr;
  REQUIRE(imlab_gateset_from_json(json, &back) == IMLAB_OK);
  char* json2 = nullptr;
  REQUIRE(imlab_gateset_to_json(back, &json2) == IMLAB_OK);
  CHECK(take(json) == take(json2));
  imlab_gateset_free(back);

  double bad[16] = {2, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0};
  imlab_gateset* g = nullptr;
  CHECK(imlab_gateset_create(2, bad, &g) == IMLAB_E_NON_UNITARY);
  CHECK(g == nullptr);
  CHECK(std::strlen(imlab_last_error()) > 0);
  CHECK(imlab_gateset_from_json("{", &g) == IMLAB_E_PARSE);
  CHECK(imlab_gateset_model('z', 0.1, &g) == IMLAB_E_INVALID_ARGUMENT);

  imlab_gateset* d = nullptr;
  REQUIRE(imlab_gateset_deform(a.p, kId, &d) == IMLAB_OK);
  double V[32];
  REQUIRE(imlab_gateset_two_qudit(d, V) == IMLAB_OK);
  for (int i = 0; i < 32; ++i) CHECK(V[i] == U[i]);
  imlab_gateset_free(d);
}

TEST_CASE("channels through the C boundary") {
  imlab_channel* c = nullptr;
  CHECK(imlab_channel_preset("mix:p=2", 2, &c) == IMLAB_E_P_OUT_OF_RANGE);
  CHECK(imlab_channel_preset("nonsense", 2, &c) == IMLAB_E_PARSE);
  CHECK(imlab_channel_from_json(R"({"kraus":[[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]})", &c) ==
        IMLAB_E_NON_TRACE_PRESERVING);
  REQUIRE(imlab_channel_from_json(R"({"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]})", &c) ==
          IMLAB_OK);
  imlab_channel_free(c);
}

TEST_CASE("growth") {
  Gates a('a', kLn2);
  std::vector<uint64_t> counts(21);
  REQUIRE(imlab_growth_counts(a.p, 20, 0, counts.data()) == IMLAB_OK);
  for (int T = 0; T <= 20; ++T) CHECK(counts[T] == uint64_t(2 * T + 1));

  imlab_growth_verdict v;
  Gates b('b', 0.7);
  REQUIRE(imlab_growth_classify(b.p, 60, 0, &v) == IMLAB_OK);
  CHECK(v.class_label == IMLAB_GROWTH_SATURATION);
  CHECK(v.has_exponent == 0);

  char* csv = nullptr;
  REQUIRE(imlab_growth_report(a.p, 3, 0, &csv, nullptr) == IMLAB_OK);
  CHECK(take(csv) == "T,count\n0,1\n1,3\n2,5\n3,7\n");

  Gates c('c', M_PI / 3);
  CHECK(imlab_growth_counts(c.p, 30, 0, nullptr) != IMLAB_OK);
  std::vector<uint64_t> big(31);
  const int st = imlab_growth_counts(c.p, 30, 0, big.data());
  CHECK(st == IMLAB_E_EXPLOSION_GUARD);
  CHECK(imlab_status_is_resource(st) == 1);
  CHECK(imlab_growth_classify(a.p, 4, 0, &v) == IMLAB_E_INSUFFICIENT_DATA);
}

TEST_CASE("temporal entanglement") {
  Gates half('a', 0.5);
  double s[6];
  REQUIRE(imlab_tee_series(half.p, kPlus, kPlus, 6, 0, s) == IMLAB_OK);
  for (double x : s) CHECK(std::abs(x) <= 1e-10);

  Gates c('c', M_PI / 3);
  double exact[5], trunc[5];
  REQUIRE(imlab_tee_series(c.p, kPlus, kPlus, 5, 0, exact) == IMLAB_OK);
  REQUIRE(imlab_tee_series(c.p, kPlus, kPlus, 5, 4096, trunc) == IMLAB_OK);
  for (int t = 0; t < 5; ++t) CHECK(std::abs(exact[t] - trunc[t]) <= 1e-9);

  const double bell[8] = {M_SQRT1_2, 0, 0, 0, 0, 0, M_SQRT1_2, 0};
  double sb[8];
  REQUIRE(imlab_tee_series_pair(c.p, bell, 8, 64, sb) == IMLAB_OK);
  for (double x : sb) CHECK(x <= 1e-8);

  char* csv = nullptr;
  REQUIRE(imlab_tee_csv(c.p, kPlus, kPlus, 3, 0, &csv) == IMLAB_OK);
  CHECK(take(csv).rfind("T,cut,", 0) == 0);
}

TEST_CASE("walk") {
  Gates c('c', M_PI / 3);
  Channel brk("break:+");
  double ex[4];
  REQUIRE(imlab_exact_series(c.p, kPlus, kPlus, kRhoPlus, brk.p, kX, 4, ex) == IMLAB_OK);
  double one[4];
  REQUIRE(imlab_exact_series(c.p, kPlus, kPlus, kRhoPlus, brk.p, kId, 4, one) == IMLAB_OK);
  for (double x : one) CHECK(std::abs(x - 1.0) <= 1e-12);

  double m1[4], e1[4], m2[4], e2[4];
  REQUIRE(imlab_mc_series(c.p, kPlus, kPlus, kRhoPlus, brk.p, kX, 4, 50000, 3, m1, e1) ==
          IMLAB_OK);
  REQUIRE(imlab_mc_series(c.p, kPlus, kPlus, kRhoPlus, brk.p, kX, 4, 50000, 3, m2, e2) ==
          IMLAB_OK);
  for (int t = 0; t < 4; ++t) {
    CHECK(m1[t] == m2[t]);
    CHECK(std::abs(m1[t] - ex[t]) <= 5 * e1[t]);
  }

  double tp[8];
  REQUIRE(imlab_exact_two_point(c.p, kPlus, kPlus, kRhoPlus, brk.p, kId, kX, 4, tp) ==
          IMLAB_OK);
  for (int t = 0; t < 4; ++t) CHECK(std::abs(tp[2 * t] - ex[t]) <= 1e-12);
  double rm[3], re[3], im[3], ie[3];
  REQUIRE(imlab_mc_two_point(c.p, kPlus, kPlus, kRhoPlus, brk.p, kZ, kX, 3, 50000, 4, rm,
                             re, im, ie) == IMLAB_OK);
  double tpz[6];
  REQUIRE(imlab_exact_two_point(c.p, kPlus, kPlus, kRhoPlus, brk.p, kZ, kX, 3, tpz) ==
          IMLAB_OK);
  CHECK(std::abs(rm[2] - tpz[4]) <= 5 * re[2] + 1e-12);

  double snapped = 0;
  REQUIRE(imlab_snapped_observable(c.p, kPlus, kPlus, kRhoPlus, brk.p, kX, 4, 0.2,
                                   &snapped) == IMLAB_OK);
  CHECK(std::abs(snapped - ex[3]) <= std::pow(1 + 0.2 * 16, 4) - 1);

  double bad_rho[8] = {1, 0, 0, 0, 0, 0, 1, 0};
  CHECK(imlab_exact_series(c.p, kPlus, kPlus, bad_rho, brk.p, kX, 4, ex) ==
        IMLAB_E_NOT_A_DENSITY_MATRIX);
  const double unnorm[4] = {1, 0, 1, 0};
  CHECK(imlab_mc_series(c.p, unnorm, kPlus, kRhoPlus, brk.p, kX, 4, 10, 1, m1, e1) ==
        IMLAB_E_NOT_NORMALIZED);
}

TEST_CASE("spectrum, negativity and covering") {
  Gates c('c', M_PI / 3);
  double mean = 0, degen = 0;
  char *csv = nullptr, *js = nullptr;
  REQUIRE(imlab_spectrum(c.p, 6, 1, &mean, &degen, &csv, &js) == IMLAB_OK);
  CHECK((mean > 0.0 && mean < 1.0));
  CHECK(take(csv).rfind("r_bin_left,r_bin_right,density\n", 0) == 0);
  CHECK(take(js).find("mean_ratio") != std::string::npos);
  CHECK(imlab_spectrum(c.p, 5, 1, &mean, &degen, nullptr, nullptr) == IMLAB_E_ODD_L);

  double nm = 1, fp = 1;
  REQUIRE(imlab_negativity_histogram(2, 500, 1, &nm, &fp, nullptr, nullptr) == IMLAB_OK);
  CHECK(nm <= 1e-10);
  CHECK(fp == 0.0);
  CHECK(imlab_negativity_histogram(7, 10, 1, &nm, &fp, nullptr, nullptr) ==
        IMLAB_E_UNSUPPORTED_DIMENSION);

  int dims[3];
  uint64_t n = 0;
  REQUIRE(imlab_covering(0.5, dims, &n, nullptr) == IMLAB_OK);
  CHECK(dims[0] == 4);
  CHECK(dims[1] == 13);
  CHECK(dims[2] == 13);
  CHECK(n <= 676);
  CHECK(imlab_covering(2.0, dims, &n, nullptr) == IMLAB_E_DELTA_OUT_OF_RANGE);
}

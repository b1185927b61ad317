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

// Acceptance suite: one PASS/FAIL line per criterion. The process exits
// non-zero when a criterion fails that is not listed in kKnownDeviations.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chain.hpp"
#include "influence.hpp"
#include "lightcone.hpp"
#include "memory.hpp"
#include "reachable.hpp"
#include "spectral.hpp"
#include "walk.hpp"

using namespace imlab;

namespace {

// Tolerances and sizes.
constexpr int kGrowthT = 50;
constexpr int kClassifyT = 60;
constexpr int kClassifyTc = 8;
constexpr double kPolyExponentTol = 0.1;
constexpr int kPlateauT = 60;
constexpr int kPlateauFrom = 30;
constexpr double kPlateauSpread = 1e-3;     // nats
constexpr int kLogGrowthT = 40;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kPlateauDip = 0.95;        // rate at a plateau vs. later rate
constexpr int kMinPlateaus = 2;
constexpr int kLinearChi = 128;
constexpr int kLinearT0 = 4, kLinearT1 = 10;
constexpr double kLinearRise = 0.5;         // nats
constexpr int kOracleT = 5;
constexpr double kOracleTol = 1e-8;
constexpr long kMcSamples = 1'000'000;
constexpr int kMcT = 8;
constexpr double kMcSigmas = 5.0;
constexpr double kMcStderrScale = 2e-3;     // "≈ 1e-3"
constexpr std::uint64_t kMcSeed = 20260101;
constexpr int kThermalT = 20;
constexpr double kThermalTol = 1e-2;
constexpr int kEnvelopeWindow = 5;
constexpr int kCoverT = 6;
constexpr int kLssL = 12;
constexpr double kLssTarget = 0.53, kLssTol = 0.02;
constexpr int kPoissonPhases = 100000;
constexpr double kPoissonTol = 0.005;
constexpr long kNegSamples = 10000;
constexpr double kQubitNegTol = 1e-10;
constexpr double kQutritFraction = 0.9;
constexpr double kTeleportTol = 1e-9;
constexpr double kTeleportTimeTol = 1e-8;
constexpr double kSolvableTol = 1e-10;
constexpr double kSolvableTeeTol = 1e-8;
constexpr int kSolvableT = 10;

// Criterion 1 asks for 4T+1 elements in the dihedral model; even words of
// length ≤ 2T reach 4T (README, "Known deviations").
const std::set<int> kKnownDeviations = {1};

const double kLn2 = std::log(2.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

Vec plus() { return Vec::Constant(2, cplx(1 / std::sqrt(2.0))); }
Mat plus_rho() { return plus() * plus().adjoint(); }
ProductInitialState plus_state() { return make_product_state(plus(), plus()); }
Mat zero_rho() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1;
  return m;
}

std::vector<QuantumChannel> repeat(const QuantumChannel& c, int n) {
  return std::vector<QuantumChannel>(static_cast<size_t>(std::max(0, n)), c);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome growth_laws() {
  Outcome o;
  auto ra = reachable_set(model_a(kLn2), kGrowthT, kImDedupTol);
  auto rb = reachable_set(model_b(kLn2), kGrowthT, kImDedupTol);
  int bad_a = 0, bad_b = 0, b_is_4t = 0;
  for (int T = 1; T <= kGrowthT; ++T) {
    bad_a += ra.count(T) != size_t(2 * T + 1);
    bad_b += rb.count(T) != size_t(4 * T + 1);
    b_is_4t += rb.count(T) == size_t(4 * T);
  }
  o.pass = bad_a == 0 && bad_b == 0;
  o.detail = "model A 2T+1 mismatches " + std::to_string(bad_a) + "/50; model B 4T+1 " +
             "mismatches " + std::to_string(bad_b) + "/50 (observed 4T at " +
             std::to_string(b_is_4t) + "/50)";
  return o;
}

Outcome class_verdicts() {
  auto s = classify_growth(reachable_set(model_b(0.7), kClassifyT, kImDedupTol));
  auto p = classify_growth(reachable_set(model_a(kLn2), kClassifyT, kImDedupTol));
  auto e = classify_growth(reachable_set(model_c(M_PI / 3), kClassifyTc, kImDedupTol));
  Outcome o;
  const double k = p.fit_exponent.value_or(NAN);
  o.pass = s.class_label == GrowthClass::Saturation &&
           p.class_label == GrowthClass::Polynomial && std::abs(k - 1.0) <= kPolyExponentTol &&
           e.class_label == GrowthClass::Exponential;
  o.detail = std::string("B(7/10) ") + growth_class_name(s.class_label) + ", A(ln2) " +
             growth_class_name(p.class_label) + " exponent " + fmt(k) + ", C(pi/3) " +
             growth_class_name(e.class_label);
  return o;
}

Outcome tee_regimes() {
  Outcome o;
  std::ostringstream d;
  // (a) plateau after saturation
  {
    auto prof = tee_series_exact(model_b(0.7), plus_state(), kPlateauT);
    auto rs = reachable_set(model_b(0.7), kPlateauT, kImDedupTol);
    double lo = INFINITY, hi = -INFINITY;
    for (int T = kPlateauFrom; T <= kPlateauT; ++T) {
      lo = std::min(lo, prof[T - 1].max_entropy);
      hi = std::max(hi, prof[T - 1].max_entropy);
    }
    const bool ok = hi - lo <= kPlateauSpread && hi <= std::log(double(rs.count(kPlateauT)));
    o.pass &= ok;
    d << "(a) spread " << fmt(hi - lo) << " over T=" << kPlateauFrom << ".." << kPlateauT
      << (ok ? " ok" : " FAIL");
  }
  // (b) logarithmic growth with plateaus
  {
    auto prof = tee_series_exact(model_b(kLn2), plus_state(), kLogGrowthT);
    bool mono = true, bounded = true;
    std::vector<double> S(kLogGrowthT + 1, 0.0);
    for (int T = 1; T <= kLogGrowthT; ++T) {
      S[T] = prof[T - 1].max_entropy;
      bounded &= S[T] <= std::log(4.0 * T + 1) + 1e-12;
      if (T > 1) mono &= S[T] >= S[T - 1] - kMonotoneSlack;
    }
    // Growth rate per unit ln T. A plateau is a local minimum of the rate
    // that lies at least 5% below some later rate, i.e. growth resumes.
    std::vector<double> rate(kLogGrowthT + 1, NAN);
    for (int T = 3; T <= kLogGrowthT; ++T) rate[T] = (S[T] - S[T - 1]) / std::log(T / (T - 1.0));
    int plateaus = 0;
    std::ostringstream where;
    for (int T = 4; T < kLogGrowthT; ++T) {
      if (!(rate[T] < rate[T - 1] && rate[T] < rate[T + 1])) continue;
      const double later = *std::max_element(rate.begin() + T + 1, rate.end());
      if (rate[T] <= kPlateauDip * later) {
        ++plateaus;
        where << (plateaus > 1 ? "," : "") << T;
      }
    }
    const bool ok = mono && bounded && plateaus >= kMinPlateaus;
    o.pass &= ok;
    d << "; (b) monotone " << (mono ? "yes" : "no") << ", bounded " << (bounded ? "yes" : "no")
      << ", plateaus " << plateaus << " at T=" << where.str() << (ok ? " ok" : " FAIL");
  }
  // (c) linear growth under truncation
  {
    auto prof = tee_series_truncated(model_c(M_PI / 3), BathState(plus_state()), kLinearT1,
                                     kLinearChi);
    const double rise = prof[kLinearT1 - 1].max_entropy - prof[kLinearT0 - 1].max_entropy;
    const bool ok = rise >= kLinearRise;
    o.pass &= ok;
    d << "; (c) rise " << fmt(rise) << " nats over T=" << kLinearT0 << ".." << kLinearT1
      << (ok ? " ok" : " FAIL");
  }
  o.detail = d.str();
  return o;
}

Outcome oracle_equivalence() {
  double worst_im = 0, worst_tr = 0;
  const ControlledGateSet models[] = {model_a(kLn2), model_b(kLn2), model_c(M_PI / 3)};
  for (const auto& gs : models) {
    auto im = build_exact_im_sparse(gs, plus_state(), kOracleT);
    for (const char* ch : {"identity", "break:+"}) {
      auto c = channel_preset(ch, 2);
      for (const Mat& rho : {plus_rho(), zero_rho()}) {
        auto series = exact_transfer_series(gs, plus_state(), rho, c, pauli_x(), kOracleT);
        for (int T = 1; T <= kOracleT; ++T) {
          auto chans = repeat(c, T - 1);
          const double bf = brute_force_observable(gs, plus_state(), rho, chans, pauli_x(), T);
          auto imT = build_exact_im_sparse(gs, plus_state(), T);
          worst_im = std::max(worst_im,
                              std::abs(contract_with_process(imT, rho, chans, pauli_x()) - bf));
          worst_tr = std::max(worst_tr, std::abs(series[T - 1].real() - bf));
        }
      }
    }
  }
  Outcome o;
  o.pass = worst_im <= kOracleTol && worst_tr <= kOracleTol;
  o.detail = "max |IM - chain| " + fmt(worst_im) + ", max |transfer - chain| " + fmt(worst_tr);
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  double worst_z = 0, worst_se = 0;
  for (const char* ch : {"identity", "break:+"}) {
    WalkConfig cfg;
    cfg.gs = model_c(M_PI / 3);
    cfg.state = plus_state();
    cfg.rho_imp = plus_rho();
    cfg.channel = channel_preset(ch, 2);
    cfg.T = kMcT;
    cfg.n_samples = kMcSamples;
    cfg.seed = kMcSeed;
    auto mc = estimate_observable_series(cfg, pauli_x());
    auto ex = exact_transfer_series(cfg.gs, cfg.state, cfg.rho_imp, cfg.channel, pauli_x(), kMcT);
    for (int t = 0; t < kMcT; ++t) {
      const double diff = std::abs(mc[t].mean - ex[t].real());
      const double z = mc[t].std_error > 0 ? diff / mc[t].std_error : (diff > 0 ? INFINITY : 0);
      worst_z = std::max(worst_z, z);
      worst_se = std::max(worst_se, mc[t].std_error);
    }
  }
  o.pass = worst_z <= kMcSigmas && worst_se <= kMcStderrScale;
  o.detail = "max |z| " + fmt(worst_z) + ", max stderr " + fmt(worst_se);
  return o;
}

Outcome thermalization() {
  auto v = exact_transfer_series(model_c(M_PI / 3), plus_state(), plus_rho(),
                                 channel_preset("break:+", 2), pauli_x(), kThermalT);
  // Envelope: maximum of |⟨σ^x⟩| over consecutive blocks of five steps.
  std::vector<double> env;
  for (int s = 0; s < kThermalT; s += kEnvelopeWindow) {
    double m = 0;
    for (int t = s; t < std::min(kThermalT, s + kEnvelopeWindow); ++t)
      m = std::max(m, std::abs(v[t].real()));
    env.push_back(m);
  }
  bool mono = true;
  for (size_t k = 1; k < env.size(); ++k) mono &= env[k] <= env[k - 1];
  const double last = std::abs(v[kThermalT - 1].real());
  Outcome o;
  o.pass = last <= kThermalTol && mono;
  o.detail = "|<X(20)>| " + fmt(last) + ", block envelope";
  for (double e : env) o.detail += " " + fmt(e);
  return o;
}

Outcome covering_bound() {
  Outcome o;
  double worst_ratio = 0;
  int violations = 0;
  for (double delta : {0.1, 0.2}) {
    auto grid = build_covering(delta);
    for (const char* ch : {"identity", "break:+"}) {
      WalkConfig cfg;
      cfg.gs = model_c(M_PI / 3);
      cfg.state = plus_state();
      cfg.rho_imp = plus_rho();
      cfg.channel = channel_preset(ch, 2);
      cfg.n_samples = 1;
      auto ex = exact_transfer_series(cfg.gs, cfg.state, cfg.rho_imp, cfg.channel, pauli_x(),
                                      kCoverT);
      for (int T = 1; T <= kCoverT; ++T) {
        cfg.T = T;
        const double s = snapped_walk_observable(cfg, pauli_x(), grid);
        const double bound = std::pow(1 + delta * T * T, T) - 1;
        const double err = std::abs(s - ex[T - 1].real());
        violations += err > bound;
        worst_ratio = std::max(worst_ratio, err / bound);
      }
    }
  }
  o.pass = violations == 0;
  o.detail = "violations " + std::to_string(violations) + ", max error/bound " + fmt(worst_ratio);
  return o;
}

Outcome level_statistics(bool with_l14) {
  Outcome o;
  auto r = lss_report(model_c(M_PI / 3), kLssL);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> ph(kPoissonPhases);
  for (double& x : ph) x = u(rng);
  auto pr = spacing_ratios(ph, true);
  const double pm = std::accumulate(pr.begin(), pr.end(), 0.0) / double(pr.size());
  o.pass = std::abs(r.mean_ratio - kLssTarget) <= kLssTol &&
           std::abs(pm - (2 * kLn2 - 1)) <= kPoissonTol;
  o.detail = "model C L=12 <r> " + fmt(r.mean_ratio) + ", uniform phases <r> " + fmt(pm);
  if (with_l14) {
    auto r14 = lss_report(model_c(M_PI / 3), 14, true, 14);
    o.detail += ", L=14 <r> " + fmt(r14.mean_ratio);
  }
  return o;
}

Outcome quantum_memory() {
  Outcome o;
  auto h2 = negativity_histogram(2, kNegSamples, 2);
  auto h3 = negativity_histogram(3, kNegSamples, 3);
  double worst = 0, worst_time = 0;
  for (int q : {2, 3})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto fam = random_teleport_family(q, seed);
      const double ref = negativity(effective_state(fam));
      std::vector<double> avg;
      for (int T = 1; T <= 3; ++T) {
        double a = 0;
        for (const auto& out : teleport_oracle(fam, T)) {
          if (!(out.probability > 1e-14)) continue;
          worst = std::max(worst, std::abs(out.negativity - ref));
          a += out.probability * out.negativity;
        }
        avg.push_back(a);
      }
      for (double a : avg) worst_time = std::max(worst_time, std::abs(a - avg.front()));
    }
  o.pass = h2.max <= kQubitNegTol && h3.fraction_positive > kQutritFraction &&
           worst <= kTeleportTol && worst_time <= kTeleportTimeTol;
  o.detail = "q=2 max " + fmt(h2.max) + ", q=3 positive fraction " + fmt(h3.fraction_positive) +
             ", oracle vs effective " + fmt(worst) + ", T spread " + fmt(worst_time);
  return o;
}

Outcome solvable_states() {
  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  double worst_res = 0, worst_tee = 0;
  for (const auto& gs : {model_a(kLn2), model_b(kLn2), model_c(M_PI / 3)}) {
    worst_res = std::max(worst_res, check_solvable_state(bell, gs).residual);
    for (const auto& p : tee_series_truncated(gs, BathState::pair_vector(2, bell), kSolvableT,
                                              kUnboundedChi))
      for (double s : p.per_cut_entropy) worst_tee = std::max(worst_tee, s);
  }
  Outcome o;
  o.pass = worst_res <= kSolvableTol && worst_tee <= kSolvableTeeTol;
  o.detail = "max residual " + fmt(worst_res) + ", max TEE " + fmt(worst_tee);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imlab acceptance suite"};
  bool l14 = false;
  std::vector<int> only;
  app.add_flag("--l14", l14, "also diagonalize the L=14 Floquet operator");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "growth laws", 5, growth_laws},
      {2, "class verdicts", 30, class_verdicts},
      {3, "TEE regimes", 600, tee_regimes},
      {4, "oracle equivalence", 300, oracle_equivalence},
      {5, "Monte Carlo accuracy", 600, monte_carlo},
      {6, "thermalization", 120, thermalization},
      {7, "covering bound", 300, covering_bound},
      {8, "level statistics", l14 ? 3600.0 : 900.0, [l14] { return level_statistics(l14); }},
      {9, "quantum memory", 600, quantum_memory},
      {10, "solvable states", 60, solvable_states},
  };

  int unexpected = 0, failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.budget_s;
    const bool pass = o.pass && in_time;
    const bool known = kKnownDeviations.count(c.id) > 0;
    failed += !pass;
    unexpected += !pass && !known;
    std::printf("criterion %d: %s %s | %s | %.1fs of %.0fs%s\n", c.id, pass ? "PASS" : "FAIL",
                c.name, o.detail.c_str(), s, c.budget_s,
                !pass && known ? " | known deviation" : "");
    std::fflush(stdout);
  }
  std::printf("summary: %d failed, %d unexpected\n", failed, unexpected);
  return unexpected == 0 ? 0 : 1;
}

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

#include "imlab/imlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "channel.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "gates.hpp"
#include "influence.hpp"
#include "lightcone.hpp"
#include "memory.hpp"
#include "reachable.hpp"
#include "spectral.hpp"
#include "walk.hpp"
#include "json.hpp"

struct imlab_gateset {
  imlab::ControlledGateSet gs;
};

struct imlab_channel {
  imlab::QuantumChannel ch;
};

namespace {

using imlab::cplx;
using imlab::ErrorKind;
using imlab::Mat;
using imlab::Vec;

thread_local std::string g_last_error;

int status_of(ErrorKind k) { return static_cast<int>(k) + 1; }

template <typename F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return IMLAB_OK;
  } catch (const imlab::Error& e) {
    g_last_error = std::string(imlab::error_name(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return IMLAB_E_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "TooLarge: allocation failed";
    return IMLAB_E_TOO_LARGE;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return IMLAB_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr)
    imlab::fail(ErrorKind::InvalidArgument, std::string(what) + " is NULL");
}

Vec read_vec(const double* p, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(p[2 * i], p[2 * i + 1]);
  return v;
}

Mat read_mat(const double* p, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = cplx(p[2 * (i * n + j)], p[2 * (i * n + j) + 1]);
  return m;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

imlab::ProductInitialState read_state(const imlab_gateset* gs, const double* psi_e,
                                      const double* psi_o) {
  need(gs, "gate set");
  need(psi_e, "psi_e");
  need(psi_o, "psi_o");
  const int q = gs->gs.q();
  return imlab::make_product_state(read_vec(psi_e, q), read_vec(psi_o, q));
}

double pick_tol(double tol) { return tol > 0 ? tol : imlab::kImDedupTol; }

imlab::WalkConfig walk_config(const imlab_gateset* gs, const double* psi_e,
                              const double* psi_o, const double* rho,
                              const imlab_channel* ch, int T, int64_t n,
                              uint64_t seed) {
  need(rho, "rho_imp");
  need(ch, "channel");
  imlab::WalkConfig cfg{gs->gs, read_state(gs, psi_e, psi_o),
                        read_mat(rho, gs->gs.q()), ch->ch, T, n, seed};
  return cfg;
}

std::vector<imlab::TeeProfile> tee_profiles(const imlab_gateset* gs,
                                            const imlab::ProductInitialState& st,
                                            int T, int chi) {
  if (T < 1) imlab::fail(ErrorKind::InvalidArgument, "T must be >= 1");
  if (chi <= 0) return imlab::tee_series_exact(gs->gs, st, T);
  return imlab::tee_series_truncated(gs->gs, st, T, chi);
}

}  // namespace

extern "C" {

IMLAB_API const char* imlab_version(void) { return "0.1.0"; }

IMLAB_API const char* imlab_status_name(int status) {
  if (status == IMLAB_OK) return "Ok";
  if (status == IMLAB_E_INTERNAL) return "Internal";
  if (status >= 1 && status <= IMLAB_E_NUMERICAL)
    return imlab::error_name(static_cast<ErrorKind>(status - 1));
  return "Unknown";
}

IMLAB_API int imlab_status_is_resource(int status) {
  return status == IMLAB_E_EXPLOSION_GUARD || status == IMLAB_E_TOO_LARGE;
}

IMLAB_API const char* imlab_last_error(void) { return g_last_error.c_str(); }

IMLAB_API void imlab_string_free(char* s) { std::free(s); }

IMLAB_API int imlab_gateset_model(char model, double param, imlab_gateset** out) {
  return guarded([&] {
    need(out, "out");
    switch (model) {
      case 'a': case 'A': *out = new imlab_gateset{imlab::model_a(param)}; break;
      case 'b': case 'B': *out = new imlab_gateset{imlab::model_b(param)}; break;
      case 'c': case 'C': *out = new imlab_gateset{imlab::model_c(param)}; break;
      default:
        imlab::fail(ErrorKind::InvalidArgument,
                    std::string("unknown model '") + model + "'");
    }
  });
}

IMLAB_API int imlab_gateset_create(int q, const double* controlled,
                                   imlab_gateset** out) {
  return guarded([&] {
    need(out, "out");
    need(controlled, "controlled");
    if (q < 2) imlab::fail(ErrorKind::InvalidArgument, "q must be >= 2");
    std::vector<Mat> us;
    for (int a = 0; a < q; ++a) us.push_back(read_mat(controlled + 2 * a * q * q, q));
    *out = new imlab_gateset{imlab::make_gate_set(q, us)};
  });
}

IMLAB_API int imlab_gateset_from_json(const char* json, imlab_gateset** out) {
  return guarded([&] {
    need(out, "out");
    need(json, "json");
    *out = new imlab_gateset{imlab::gate_set_from_json(json)};
  });
}

IMLAB_API int imlab_gateset_to_json(const imlab_gateset* gs, char** out) {
  return guarded([&] {
    need(gs, "gate set");
    need(out, "out");
    *out = dup(imlab::gate_set_to_json(gs->gs));
  });
}

IMLAB_API int imlab_gateset_deform(const imlab_gateset* gs, const double* v,
                                   imlab_gateset** out) {
  return guarded([&] {
    need(gs, "gate set");
    need(v, "v");
    need(out, "out");
    *out = new imlab_gateset{
        imlab::conjugate_deform(gs->gs, read_mat(v, gs->gs.q()))};
  });
}

IMLAB_API int imlab_gateset_q(const imlab_gateset* gs) {
  return gs ? gs->gs.q() : 0;
}

IMLAB_API int imlab_gateset_two_qudit(const imlab_gateset* gs, double* out) {
  return guarded([&] {
    need(gs, "gate set");
    need(out, "out");
    const Mat& U = gs->gs.two_qudit();
    for (Eigen::Index i = 0; i < U.rows(); ++i)
      for (Eigen::Index j = 0; j < U.cols(); ++j) {
        out[2 * (i * U.cols() + j)] = U(i, j).real();
        out[2 * (i * U.cols() + j) + 1] = U(i, j).imag();
      }
  });
}

IMLAB_API void imlab_gateset_free(imlab_gateset* gs) { delete gs; }

IMLAB_API int imlab_channel_preset(const char* name, int q, imlab_channel** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new imlab_channel{imlab::channel_preset(name, q)};
  });
}

IMLAB_API int imlab_channel_from_json(const char* json, imlab_channel** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new imlab_channel{imlab::channel_from_json(json)};
  });
}

IMLAB_API void imlab_channel_free(imlab_channel* ch) { delete ch; }

IMLAB_API int imlab_growth_counts(const imlab_gateset* gs, int T_max, double tol,
                                  uint64_t* counts) {
  return guarded([&] {
    need(gs, "gate set");
    need(counts, "counts");
    if (T_max < 0) imlab::fail(ErrorKind::InvalidArgument, "T_max must be >= 0");
    const auto rs = imlab::reachable_set(gs->gs, T_max, pick_tol(tol));
    for (int t = 0; t <= T_max; ++t) counts[t] = rs.count(t);
  });
}

IMLAB_API int imlab_growth_classify(const imlab_gateset* gs, int T_max,
                                    double tol, imlab_growth_verdict* out) {
  return guarded([&] {
    need(gs, "gate set");
    need(out, "out");
    const auto v = imlab::classify_growth(
        imlab::reachable_set(gs->gs, T_max, pick_tol(tol)));
    out->class_label = static_cast<int>(v.class_label);
    out->has_exponent = v.fit_exponent.has_value();
    out->exponent = v.fit_exponent.value_or(0.0);
    out->t_min = v.t_min;
    out->t_max = v.t_max;
    out->residual = v.residual;
  });
}

IMLAB_API int imlab_growth_report(const imlab_gateset* gs, int T_max, double tol,
                                  char** csv, char** verdict_json) {
  return guarded([&] {
    need(gs, "gate set");
    const auto rs = imlab::reachable_set(gs->gs, T_max, pick_tol(tol));
    std::string verdict;
    if (verdict_json) {
      nlohmann::json j;
      try {
        const auto v = imlab::classify_growth(rs);
        j["class"] = imlab::growth_class_name(v.class_label);
        j["fit_exponent"] = v.fit_exponent ? nlohmann::json(*v.fit_exponent)
                                           : nlohmann::json(nullptr);
        j["evidence_window"] = {v.t_min, v.t_max};
        j["residual"] = v.residual;
      } catch (const imlab::Error& e) {
        if (e.kind() != ErrorKind::InsufficientData) throw;
        j["class"] = nullptr;
        j["detail"] = e.what();
      }
      j["counts"] = rs.counts();
      verdict = j.dump(2);
    }
    if (csv) *csv = dup(imlab::counts_csv(rs));
    if (verdict_json) *verdict_json = dup(verdict);
  });
}

IMLAB_API int imlab_tee_series(const imlab_gateset* gs, const double* psi_e,
                               const double* psi_o, int T, int chi,
                               double* max_entropy) {
  return guarded([&] {
    need(max_entropy, "max_entropy");
    const auto prof = tee_profiles(gs, read_state(gs, psi_e, psi_o), T, chi);
    for (int t = 0; t < T; ++t) max_entropy[t] = prof[static_cast<size_t>(t)].max_entropy;
  });
}

IMLAB_API int imlab_tee_csv(const imlab_gateset* gs, const double* psi_e,
                            const double* psi_o, int T, int chi, char** csv) {
  return guarded([&] {
    need(csv, "csv");
    *csv = dup(imlab::tee_csv(tee_profiles(gs, read_state(gs, psi_e, psi_o), T, chi)));
  });
}

IMLAB_API int imlab_tee_series_pair(const imlab_gateset* gs, const double* pair,
                                    int T, int chi, double* max_entropy) {
  return guarded([&] {
    need(gs, "gate set");
    need(pair, "pair");
    need(max_entropy, "max_entropy");
    if (T < 1) imlab::fail(ErrorKind::InvalidArgument, "T must be >= 1");
    const int q = gs->gs.q();
    const auto st = imlab::BathState::pair_vector(q, read_vec(pair, q * q));
    const auto prof = imlab::tee_series_truncated(
        gs->gs, st, T, chi > 0 ? chi : imlab::kUnboundedChi);
    for (int t = 0; t < T; ++t) max_entropy[t] = prof[static_cast<size_t>(t)].max_entropy;
  });
}

IMLAB_API int imlab_mc_series(const imlab_gateset* gs, const double* psi_e,
                              const double* psi_o, const double* rho_imp,
                              const imlab_channel* ch, const double* obs, int T,
                              int64_t n_samples, uint64_t seed, double* mean,
                              double* std_error) {
  return guarded([&] {
    need(obs, "obs");
    need(mean, "mean");
    const auto cfg = walk_config(gs, psi_e, psi_o, rho_imp, ch, T, n_samples, seed);
    const auto s = imlab::estimate_observable_series(cfg, read_mat(obs, gs->gs.q()));
    for (int t = 0; t < T; ++t) {
      mean[t] = s[static_cast<size_t>(t)].mean;
      if (std_error) std_error[t] = s[static_cast<size_t>(t)].std_error;
    }
  });
}

IMLAB_API int imlab_mc_two_point(const imlab_gateset* gs, const double* psi_e,
                                 const double* psi_o, const double* rho_imp,
                                 const imlab_channel* ch, const double* o_prime,
                                 const double* obs, int T, int64_t n_samples,
                                 uint64_t seed, double* re_mean, double* re_err,
                                 double* im_mean, double* im_err) {
  return guarded([&] {
    need(obs, "obs");
    need(o_prime, "o_prime");
    need(re_mean, "re_mean");
    need(im_mean, "im_mean");
    const auto cfg = walk_config(gs, psi_e, psi_o, rho_imp, ch, T, n_samples, seed);
    const int q = gs->gs.q();
    const auto s = imlab::estimate_two_point_series(cfg, read_mat(o_prime, q),
                                                    read_mat(obs, q));
    for (int t = 0; t < T; ++t) {
      const auto& e = s[static_cast<size_t>(t)];
      re_mean[t] = e.re.mean;
      im_mean[t] = e.im.mean;
      if (re_err) re_err[t] = e.re.std_error;
      if (im_err) im_err[t] = e.im.std_error;
    }
  });
}

IMLAB_API int imlab_exact_series(const imlab_gateset* gs, const double* psi_e,
                                 const double* psi_o, const double* rho_imp,
                                 const imlab_channel* ch, const double* obs,
                                 int T, double* values) {
  return guarded([&] {
    need(obs, "obs");
    need(values, "values");
    need(rho_imp, "rho_imp");
    need(ch, "channel");
    const auto st = read_state(gs, psi_e, psi_o);
    const int q = gs->gs.q();
    const Mat rho = read_mat(rho_imp, q);
    imlab::require_density(rho, 1e-10, "rho_imp");
    const auto s = imlab::exact_transfer_series(gs->gs, st, rho, ch->ch,
                                                read_mat(obs, q), T);
    for (int t = 0; t < T; ++t) values[t] = s[static_cast<size_t>(t)].real();
  });
}

IMLAB_API int imlab_exact_two_point(const imlab_gateset* gs, const double* psi_e,
                                    const double* psi_o, const double* rho_imp,
                                    const imlab_channel* ch,
                                    const double* o_prime, const double* obs,
                                    int T, double* out) {
  return guarded([&] {
    need(obs, "obs");
    need(o_prime, "o_prime");
    need(out, "out");
    need(rho_imp, "rho_imp");
    need(ch, "channel");
    const auto st = read_state(gs, psi_e, psi_o);
    const int q = gs->gs.q();
    const Mat rho = read_mat(rho_imp, q);
    imlab::require_density(rho, 1e-10, "rho_imp");
    const auto s = imlab::exact_transfer_series(
        gs->gs, st, read_mat(o_prime, q) * rho, ch->ch, read_mat(obs, q), T);
    for (int t = 0; t < T; ++t) {
      out[2 * t] = s[static_cast<size_t>(t)].real();
      out[2 * t + 1] = s[static_cast<size_t>(t)].imag();
    }
  });
}

IMLAB_API int imlab_snapped_observable(const imlab_gateset* gs,
                                       const double* psi_e, const double* psi_o,
                                       const double* rho_imp,
                                       const imlab_channel* ch,
                                       const double* obs, int T, double delta,
                                       double* out) {
  return guarded([&] {
    need(obs, "obs");
    need(out, "out");
    const auto cfg = walk_config(gs, psi_e, psi_o, rho_imp, ch, T, 1, 0);
    *out = imlab::snapped_walk_observable(cfg, read_mat(obs, gs->gs.q()),
                                          imlab::build_covering(delta));
  });
}

IMLAB_API int imlab_spectrum(const imlab_gateset* gs, int L, int wrap,
                             double* mean_ratio, double* degenerate_fraction,
                             char** csv, char** summary_json) {
  return guarded([&] {
    need(gs, "gate set");
    const auto r = imlab::lss_report(gs->gs, L, wrap != 0);
    if (mean_ratio) *mean_ratio = r.mean_ratio;
    if (degenerate_fraction) *degenerate_fraction = r.degenerate_fraction;
    if (csv) *csv = dup(imlab::spectrum_csv(r));
    if (summary_json) *summary_json = dup(imlab::spectrum_summary_json(r));
  });
}

IMLAB_API int imlab_negativity_histogram(int q, int64_t n_samples, uint64_t seed,
                                         double* mean,
                                         double* fraction_positive, char** csv,
                                         char** summary_json) {
  return guarded([&] {
    const auto h = imlab::negativity_histogram(q, n_samples, seed);
    if (mean) *mean = h.mean;
    if (fraction_positive) *fraction_positive = h.fraction_positive;
    if (csv) *csv = dup(imlab::negativity_csv(h));
    if (summary_json) *summary_json = dup(imlab::negativity_summary_json(h));
  });
}

IMLAB_API int imlab_covering(double delta, int* dims, uint64_t* n_points,
                             char** json) {
  return guarded([&] {
    const auto g = imlab::build_covering(delta);
    if (dims)
      for (int i = 0; i < 3; ++i) dims[i] = g.grid_dims()[static_cast<size_t>(i)];
    if (n_points) *n_points = g.points().size();
    if (json) *json = dup(imlab::covering_json(g));
  });
}

}  // extern "C"

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

#ifndef IMLAB_IMLAB_H_
#define IMLAB_IMLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(IMLAB_BUILD)
#define IMLAB_API __attribute__((visibility("default")))
#else
#define IMLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one of these; the detail of
 * the last failure on the calling thread is available from
 * imlab_last_error(). */
typedef enum {
  IMLAB_OK = 0,
  IMLAB_E_INVALID_ARGUMENT = 1,
  IMLAB_E_NON_UNITARY = 2,
  IMLAB_E_DIMENSION_MISMATCH = 3,
  IMLAB_E_UNSUPPORTED_DIMENSION = 4,
  IMLAB_E_NOT_NORMALIZED = 5,
  IMLAB_E_NOT_A_DENSITY_MATRIX = 6,
  IMLAB_E_NON_TRACE_PRESERVING = 7,
  IMLAB_E_EXPLOSION_GUARD = 8,
  IMLAB_E_TOO_LARGE = 9,
  IMLAB_E_INSUFFICIENT_DATA = 10,
  IMLAB_E_DELTA_OUT_OF_RANGE = 11,
  IMLAB_E_INCONSISTENT_REACHABLE_SETS = 12,
  IMLAB_E_DEGENERATE_NORM = 13,
  IMLAB_E_NON_CONVERGENT_STEADY_STATE = 14,
  IMLAB_E_ALL_ZERO_WEIGHTS = 15,
  IMLAB_E_P_OUT_OF_RANGE = 16,
  IMLAB_E_ODD_L = 17,
  IMLAB_E_TOO_FEW_LEVELS = 18,
  IMLAB_E_NON_UNIFORM_ALPHA = 19,
  IMLAB_E_BAD_DIMS = 20,
  IMLAB_E_PARSE = 21,
  IMLAB_E_NUMERICAL = 22,
  IMLAB_E_INTERNAL = 100
} imlab_status;

IMLAB_API const char* imlab_version(void);
IMLAB_API const char* imlab_status_name(int status);
/* 1 for resource guards (explosion guard, too large), else 0. */
IMLAB_API int imlab_status_is_resource(int status);
IMLAB_API const char* imlab_last_error(void);

/* Strings returned through char** are owned by the caller. */
IMLAB_API void imlab_string_free(char* s);

/* Complex arrays are interleaved (re, im) pairs; matrices are row-major. */

typedef struct imlab_gateset imlab_gateset;
typedef struct imlab_channel imlab_channel;

/* model: 'a', 'b' or 'c'; param is K for a and b, theta for c. */
IMLAB_API int imlab_gateset_model(char model, double param, imlab_gateset** out);
/* controlled: q matrices of q x q complex entries. */
IMLAB_API int imlab_gateset_create(int q, const double* controlled,
                                   imlab_gateset** out);
IMLAB_API int imlab_gateset_from_json(const char* json, imlab_gateset** out);
IMLAB_API int imlab_gateset_to_json(const imlab_gateset* gs, char** out);
/* u_a -> v u_a v^dagger */
IMLAB_API int imlab_gateset_deform(const imlab_gateset* gs, const double* v,
                                   imlab_gateset** out);
IMLAB_API int imlab_gateset_q(const imlab_gateset* gs);
/* q^2 x q^2 complex entries. */
IMLAB_API int imlab_gateset_two_qudit(const imlab_gateset* gs, double* out);
IMLAB_API void imlab_gateset_free(imlab_gateset* gs);

/* "identity", "break:+", "break:0", "mix:p=<p>" */
IMLAB_API int imlab_channel_preset(const char* name, int q, imlab_channel** out);
IMLAB_API int imlab_channel_from_json(const char* json, imlab_channel** out);
IMLAB_API void imlab_channel_free(imlab_channel* ch);

/* ---- growth ---- */

typedef enum {
  IMLAB_GROWTH_SATURATION = 0,
  IMLAB_GROWTH_POLYNOMIAL = 1,
  IMLAB_GROWTH_EXPONENTIAL = 2
} imlab_growth_class;

typedef struct {
  int class_label;
  int has_exponent;
  double exponent;
  int t_min;
  int t_max;
  double residual;
} imlab_growth_verdict;

/* counts has room for T_max + 1 entries. tol <= 0 selects the default. */
IMLAB_API int imlab_growth_counts(const imlab_gateset* gs, int T_max, double tol,
                                  uint64_t* counts);
IMLAB_API int imlab_growth_classify(const imlab_gateset* gs, int T_max,
                                    double tol, imlab_growth_verdict* out);
/* CSV T,count plus a JSON verdict; either output may be NULL. */
IMLAB_API int imlab_growth_report(const imlab_gateset* gs, int T_max, double tol,
                                  char** csv, char** verdict_json);

/* ---- temporal entanglement ---- */

/* psi_e, psi_o: q complex amplitudes each. chi <= 0 builds the exact IM.
 * max_entropy has room for T entries (horizons 1..T). */
IMLAB_API int imlab_tee_series(const imlab_gateset* gs, const double* psi_e,
                               const double* psi_o, int T, int chi,
                               double* max_entropy);
IMLAB_API int imlab_tee_csv(const imlab_gateset* gs, const double* psi_e,
                            const double* psi_o, int T, int chi, char** csv);
/* Same for a two-site bath state given as a q^2 pair vector. */
IMLAB_API int imlab_tee_series_pair(const imlab_gateset* gs, const double* pair,
                                    int T, int chi, double* max_entropy);

/* ---- stochastic walk ---- */

/* rho_imp and obs are q x q complex. mean/std_error have room for T
 * entries (t = 1..T). */
IMLAB_API int imlab_mc_series(const imlab_gateset* gs, const double* psi_e,
                              const double* psi_o, const double* rho_imp,
                              const imlab_channel* ch, const double* obs, int T,
                              int64_t n_samples, uint64_t seed, double* mean,
                              double* std_error);
/* <O(T) O'(0)>; each output has room for T entries. */
IMLAB_API int imlab_mc_two_point(const imlab_gateset* gs, const double* psi_e,
                                 const double* psi_o, const double* rho_imp,
                                 const imlab_channel* ch, const double* o_prime,
                                 const double* obs, int T, int64_t n_samples,
                                 uint64_t seed, double* re_mean, double* re_err,
                                 double* im_mean, double* im_err);
/* Deterministic sum over all branch sequences; values has room for T. */
IMLAB_API int imlab_exact_series(const imlab_gateset* gs, const double* psi_e,
                                 const double* psi_o, const double* rho_imp,
                                 const imlab_channel* ch, const double* obs,
                                 int T, double* values);
/* out is one complex number per t = 1..T (2T doubles). */
IMLAB_API int imlab_exact_two_point(const imlab_gateset* gs, const double* psi_e,
                                    const double* psi_o, const double* rho_imp,
                                    const imlab_channel* ch,
                                    const double* o_prime, const double* obs,
                                    int T, double* out);
IMLAB_API int imlab_snapped_observable(const imlab_gateset* gs,
                                       const double* psi_e, const double* psi_o,
                                       const double* rho_imp,
                                       const imlab_channel* ch,
                                       const double* obs, int T, double delta,
                                       double* out);

/* ---- spectral ---- */

IMLAB_API int imlab_spectrum(const imlab_gateset* gs, int L, int wrap,
                             double* mean_ratio, double* degenerate_fraction,
                             char** csv, char** summary_json);

/* ---- memory ---- */

IMLAB_API int imlab_negativity_histogram(int q, int64_t n_samples, uint64_t seed,
                                         double* mean,
                                         double* fraction_positive, char** csv,
                                         char** summary_json);

/* ---- covering ---- */

/* dims: 3 ints (N_theta, N_phi, N_psi). */
IMLAB_API int imlab_covering(double delta, int* dims, uint64_t* n_points,
                             char** json);

#ifdef __cplusplus
}
#endif

#endif  // IMLAB_IMLAB_H_

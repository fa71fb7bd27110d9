/*
 * Copyright 2026 The masersync Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the masersync library: a driven three-level maser heat
 * engine in the rotating frame, its steady state, the SU(3) Husimi-Q
 * synchronization measure, steady-state thermodynamics and parameter sweeps.
 *
 * Conventions:
 *   - hbar = k_B = 1; all frequencies and rates share one inverse-time unit.
 *   - 3x3 complex matrices are passed as 18 doubles, row-major, with real and
 *     imaginary parts interleaved: {re(m11), im(m11), re(m12), im(m12), ...}.
 *   - Every fallible call returns a maser_status; on failure a message is
 *     available from maser_last_error() on the calling thread.
 *   - Handles are opaque and owned by the caller; release them with the
 *     matching *_destroy function (NULL is accepted). Functions that create
 *     a handle set *out to NULL when they fail.
 */

#ifndef MASERSYNC_H
#define MASERSYNC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MASERSYNC_BUILDING_LIBRARY)
#    define MASERSYNC_API __declspec(dllexport)
#  else
#    define MASERSYNC_API __declspec(dllimport)
#  endif
#else
#  define MASERSYNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum maser_status {
  MASER_OK = 0,
  MASER_ERR_INVALID_ARGUMENT = 1,
  MASER_ERR_NOT_HERMITIAN = 2,
  MASER_ERR_TRACE = 3,
  MASER_ERR_NOT_POSITIVE = 4,
  MASER_ERR_DEGENERATE_PARAMETERS = 5,
  MASER_ERR_DEGENERATE_KERNEL = 6,
  MASER_ERR_STEP_SIZE = 7,
  MASER_ERR_NOT_STEADY_STATE = 8,
  MASER_ERR_BOUND_VIOLATION = 9,
  MASER_ERR_IO = 10,
  MASER_ERR_CONFIG = 11,
  MASER_ERR_INTERNAL = 12
} maser_status;

typedef enum maser_regime {
  MASER_REGIME_ENGINE = 0,
  MASER_REGIME_FRIDGE = 1,
  MASER_REGIME_DEGENERATE = 2,
  MASER_REGIME_ERROR = 3
} maser_regime;

typedef enum maser_sweep_mode {
  MASER_SWEEP_ARNOLD = 0,
  MASER_SWEEP_TEMPERATURE = 1
} maser_sweep_mode;

typedef enum maser_axis {
  MASER_AXIS_DELTA = 0,
  MASER_AXIS_EPSILON = 1,
  MASER_AXIS_TCTH = 2,
  MASER_AXIS_NBAR_C = 3
} maser_axis;

typedef struct maser_engine_params {
  double omega1, omega2, omega3; /* level frequencies, omega3 > omega2 > omega1 */
  double omega_d;                /* drive frequency; detuning = omega32 - omega_d */
  double epsilon;                /* drive strength */
  double gamma_h, gamma_c;       /* bath coupling rates */
  double nbar_h, nbar_c;         /* bath occupations */
} maser_engine_params;

typedef struct maser_sync_profile {
  double s_max;
  double phi1, phi2;       /* maximizing phases in [0, 2pi) */
  double coherence_bound;  /* C_l1 / 16pi */
} maser_sync_profile;

typedef struct maser_thermo_report {
  double power_ss, abs_power;
  double qdot_h, qdot_c;
  double efficiency, carnot;
  double entropy_production;
  double s_max, bound;
  double t_hot, t_cold;
  maser_regime regime;
} maser_thermo_report;

typedef struct maser_frame_diagnostics {
  double qdot, power, total, cross_term;
} maser_frame_diagnostics;

typedef struct maser_result_row {
  int has_delta, has_epsilon, has_tcth;
  double delta, epsilon, tcth;
  double s_max, power_ss, abs_power, bound;
  double qdot_h, qdot_c, efficiency, carnot, entropy;
  maser_regime regime;
} maser_result_row;

typedef struct maser_check {
  const char* name; /* owned by the report */
  double measured;
  double tolerance;
  int passed;
} maser_check;

typedef struct maser_density maser_density;
typedef struct maser_trajectory maser_trajectory;
typedef struct maser_sweep_spec maser_sweep_spec;
typedef struct maser_table maser_table;
typedef struct maser_verify_report maser_verify_report;

/* ---- errors and version ------------------------------------------------ */

MASERSYNC_API const char* maser_version(void);
MASERSYNC_API const char* maser_status_string(maser_status status);
MASERSYNC_API const char* maser_last_error(void);

/* ---- parameters ---------------------------------------------------------- */

/* Reference engine at zero detuning. */
MASERSYNC_API void maser_default_params(maser_engine_params* out);
MASERSYNC_API maser_status maser_params_validate(const maser_engine_params* p);
MASERSYNC_API maser_status maser_params_from_json(const char* json, maser_engine_params* out);
MASERSYNC_API double maser_params_detuning(const maser_engine_params* p);
MASERSYNC_API void maser_params_set_detuning(maser_engine_params* p, double delta);

/* ---- density matrices ---------------------------------------------------- */

/* Validates Hermiticity, trace and positivity with one tolerance. */
MASERSYNC_API maser_status maser_density_create(const double entries[18], double tol, maser_density** out);
MASERSYNC_API maser_status maser_density_entries(const maser_density* rho, double out[18]);
MASERSYNC_API void maser_density_destroy(maser_density* rho);
MASERSYNC_API maser_status maser_trace_distance(const maser_density* a, const maser_density* b, double* out);

/* ---- dynamics ------------------------------------------------------------ */

/* 9x9 generator on column-stacked vec(rho), 162 doubles row-major interleaved. */
MASERSYNC_API maser_status maser_liouvillian(const maser_engine_params* p, double out[162]);
MASERSYNC_API maser_status maser_lindblad_rhs(const maser_engine_params* p, const maser_density* rho,
                                              double out[18]);
MASERSYNC_API maser_status maser_steady_state_analytic(const maser_engine_params* p, maser_density** out);
MASERSYNC_API maser_status maser_steady_state_nullspace(const maser_engine_params* p, maser_density** out);
MASERSYNC_API maser_status maser_steady_state_residual(const maser_engine_params* p, const maser_density* rho,
                                                       double* out);
MASERSYNC_API maser_status maser_spectral_gap(const maser_engine_params* p, double* out);
MASERSYNC_API maser_status maser_default_time_step(const maser_engine_params* p, double* out);

MASERSYNC_API maser_status maser_evolve(const maser_density* rho0, const maser_engine_params* p, double t_final,
                                        double dt, size_t store_every, maser_trajectory** out);
MASERSYNC_API maser_status maser_evolve_final(const maser_density* rho0, const maser_engine_params* p,
                                              double t_final, double dt, maser_density** out);
MASERSYNC_API size_t maser_trajectory_size(const maser_trajectory* traj);
MASERSYNC_API maser_status maser_trajectory_sample(const maser_trajectory* traj, size_t index, double* time,
                                                   double entries[18]);
MASERSYNC_API size_t maser_trajectory_positivity_warnings(const maser_trajectory* traj);
MASERSYNC_API double maser_trajectory_min_eigenvalue(const maser_trajectory* traj);
MASERSYNC_API void maser_trajectory_destroy(maser_trajectory* traj);

/* ---- synchronization ----------------------------------------------------- */

MASERSYNC_API maser_status maser_husimi_q(const maser_density* rho, double theta, double xi, double phi1,
                                          double phi2, double* out);
MASERSYNC_API maser_status maser_sync_measure(const maser_density* rho, double phi1, double phi2, double* out);
MASERSYNC_API maser_status maser_sync_measure_quadrature(const maser_density* rho, double phi1, double phi2,
                                                         int nodes, double* out);
MASERSYNC_API maser_status maser_sync_max(const maser_density* rho, maser_sync_profile* out);

/* ---- thermodynamics ------------------------------------------------------ */

MASERSYNC_API maser_status maser_nbar_from_temperature(double omega, double temperature, double* out);
MASERSYNC_API maser_status maser_temperature_from_nbar(double omega, double nbar, double* out);
MASERSYNC_API maser_status maser_thermo_report_compute(const maser_engine_params* p, const maser_density* rho_ss,
                                                       maser_thermo_report* out);
MASERSYNC_API maser_status maser_frame_diagnostics_compute(const maser_density* rho, const maser_engine_params* p,
                                                           const double frame_generator[18], double time,
                                                           maser_frame_diagnostics* out);

/* ---- sweeps -------------------------------------------------------------- */

MASERSYNC_API maser_status maser_sweep_spec_default(maser_sweep_mode mode, maser_sweep_spec** out);
MASERSYNC_API maser_status maser_sweep_spec_from_json(const char* json, maser_sweep_spec** out);
/* points == 0 when the axis is absent. */
MASERSYNC_API maser_status maser_sweep_spec_get_axis(const maser_sweep_spec* spec, maser_axis axis, double* min,
                                                     double* max, int* points);
/* Switching to a different mode resets the axes to that mode's defaults. */
MASERSYNC_API maser_status maser_sweep_spec_set_mode(maser_sweep_spec* spec, maser_sweep_mode mode);
/* points == 0 removes the axis. */
MASERSYNC_API maser_status maser_sweep_spec_set_axis(maser_sweep_spec* spec, maser_axis axis, double min,
                                                     double max, int points);
MASERSYNC_API maser_status maser_sweep_spec_set_threads(maser_sweep_spec* spec, unsigned threads);
MASERSYNC_API maser_status maser_sweep_spec_set_output(maser_sweep_spec* spec, const char* path);
/* Returned string is owned by the spec and valid until it is modified. */
MASERSYNC_API const char* maser_sweep_spec_output(const maser_sweep_spec* spec);
MASERSYNC_API const char* maser_sweep_spec_json(const maser_sweep_spec* spec);
MASERSYNC_API maser_status maser_sweep_spec_params(const maser_sweep_spec* spec, maser_engine_params* out);
MASERSYNC_API maser_status maser_sweep_spec_validate(const maser_sweep_spec* spec);
MASERSYNC_API void maser_sweep_spec_destroy(maser_sweep_spec* spec);

MASERSYNC_API maser_status maser_sweep_run(const maser_sweep_spec* spec, maser_table** out);
MASERSYNC_API size_t maser_table_size(const maser_table* table);
MASERSYNC_API maser_status maser_table_row(const maser_table* table, size_t index, maser_result_row* out);
MASERSYNC_API maser_status maser_table_write_csv(const maser_table* table, const char* path);
MASERSYNC_API void maser_table_destroy(maser_table* table);

/* ---- self verification --------------------------------------------------- */

MASERSYNC_API maser_status maser_verify_run(uint64_t seed, int draws, maser_verify_report** out);
MASERSYNC_API int maser_verify_report_passed(const maser_verify_report* report);
MASERSYNC_API size_t maser_verify_report_check_count(const maser_verify_report* report);
MASERSYNC_API maser_status maser_verify_report_check(const maser_verify_report* report, size_t index,
                                                     maser_check* out);
MASERSYNC_API const char* maser_verify_report_text(const maser_verify_report* report);
MASERSYNC_API const char* maser_verify_report_json(const maser_verify_report* report);
MASERSYNC_API void maser_verify_report_destroy(maser_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MASERSYNC_H */

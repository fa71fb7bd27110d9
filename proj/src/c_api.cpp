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

#include "masersync/masersync.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "masersync/dynamics.hpp"
#include "masersync/sweep.hpp"
#include "masersync/sync.hpp"
#include "masersync/thermo.hpp"
#include "masersync/verify.hpp"

using namespace masersync;

struct maser_density {
  DensityMatrix rho;
};

struct maser_trajectory {
  Trajectory traj;
};

struct maser_sweep_spec {
  SweepSpec spec;
  mutable std::string json;
};

struct maser_table {
  std::vector<ResultRow> rows;
};

struct maser_verify_report {
  VerifyReport report;
  std::string text;
  std::string json;
};

namespace {

thread_local std::string last_error;

maser_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return MASER_ERR_INVALID_ARGUMENT;
    case ErrorKind::NotHermitian: return MASER_ERR_NOT_HERMITIAN;
    case ErrorKind::TraceDeviation: return MASER_ERR_TRACE;
    case ErrorKind::NotPositive: return MASER_ERR_NOT_POSITIVE;
    case ErrorKind::DegenerateParameters: return MASER_ERR_DEGENERATE_PARAMETERS;
    case ErrorKind::DegenerateKernel: return MASER_ERR_DEGENERATE_KERNEL;
    case ErrorKind::StepSize: return MASER_ERR_STEP_SIZE;
    case ErrorKind::NotSteadyState: return MASER_ERR_NOT_STEADY_STATE;
    case ErrorKind::BoundViolation: return MASER_ERR_BOUND_VIOLATION;
    case ErrorKind::Io: return MASER_ERR_IO;
    case ErrorKind::Config: return MASER_ERR_CONFIG;
  }
  return MASER_ERR_INTERNAL;
}

template <class F>
maser_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return MASER_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MASER_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MASER_ERR_INTERNAL;
  }
}

void require_non_null(const void* ptr, const char* what) {
  if (ptr == nullptr) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is NULL");
}

EngineParams to_cpp(const maser_engine_params* p) {
  require_non_null(p, "params");
  EngineParams q;
  q.omega1 = p->omega1;
  q.omega2 = p->omega2;
  q.omega3 = p->omega3;
  q.omega_d = p->omega_d;
  q.epsilon = p->epsilon;
  q.gamma_h = p->gamma_h;
  q.gamma_c = p->gamma_c;
  q.nbar_h = p->nbar_h;
  q.nbar_c = p->nbar_c;
  return q;
}

maser_engine_params to_c(const EngineParams& q) {
  return {q.omega1, q.omega2, q.omega3, q.omega_d, q.epsilon, q.gamma_h, q.gamma_c, q.nbar_h, q.nbar_c};
}

Complex3x3 unpack(const double* entries) {
  require_non_null(entries, "entries");
  Complex3x3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(entries[2 * (3 * i + j)], entries[2 * (3 * i + j) + 1]);
  }
  return m;
}

void pack(const Complex3x3& m, double* out) {
  require_non_null(out, "output buffer");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[2 * (3 * i + j)] = m(i, j).real();
      out[2 * (3 * i + j) + 1] = m(i, j).imag();
    }
  }
}

const DensityMatrix& deref(const maser_density* rho) {
  require_non_null(rho, "density");
  return rho->rho;
}

maser_regime regime_of(const std::string& name) {
  if (name == "engine") return MASER_REGIME_ENGINE;
  if (name == "fridge") return MASER_REGIME_FRIDGE;
  if (name == "degenerate") return MASER_REGIME_DEGENERATE;
  return MASER_REGIME_ERROR;
}

maser_regime regime_of(Regime r) {
  switch (r) {
    case Regime::Engine: return MASER_REGIME_ENGINE;
    case Regime::Fridge: return MASER_REGIME_FRIDGE;
    case Regime::Degenerate: return MASER_REGIME_DEGENERATE;
  }
  return MASER_REGIME_ERROR;
}

SweepMode mode_of(maser_sweep_mode m) {
  if (m == MASER_SWEEP_ARNOLD) return SweepMode::Arnold;
  if (m == MASER_SWEEP_TEMPERATURE) return SweepMode::Temperature;
  throw Error(ErrorKind::InvalidArgument, "unknown sweep mode");
}

}  // namespace

extern "C" {

const char* maser_version(void) { return "0.1.0"; }

const char* maser_status_string(maser_status status) {
  switch (status) {
    case MASER_OK: return "ok";
    case MASER_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MASER_ERR_NOT_HERMITIAN: return "matrix is not Hermitian";
    case MASER_ERR_TRACE: return "trace deviates from one";
    case MASER_ERR_NOT_POSITIVE: return "matrix is not positive semidefinite";
    case MASER_ERR_DEGENERATE_PARAMETERS: return "degenerate parameters";
    case MASER_ERR_DEGENERATE_KERNEL: return "steady state is not unique";
    case MASER_ERR_STEP_SIZE: return "step size error";
    case MASER_ERR_NOT_STEADY_STATE: return "state is not stationary";
    case MASER_ERR_BOUND_VIOLATION: return "power bound violated";
    case MASER_ERR_IO: return "i/o error";
    case MASER_ERR_CONFIG: return "configuration error";
    case MASER_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* maser_last_error(void) { return last_error.c_str(); }

void maser_default_params(maser_engine_params* out) {
  if (out != nullptr) *out = to_c(EngineParams{}.with_detuning(0.0));
}

maser_status maser_params_validate(const maser_engine_params* p) {
  return guarded([&] { to_cpp(p).validate(); });
}

maser_status maser_params_from_json(const char* json, maser_engine_params* out) {
  return guarded([&] {
    require_non_null(json, "json");
    require_non_null(out, "out");
    *out = to_c(engine_params_from_json(json));
  });
}

double maser_params_detuning(const maser_engine_params* p) {
  return p == nullptr ? 0.0 : p->omega3 - p->omega2 - p->omega_d;
}

void maser_params_set_detuning(maser_engine_params* p, double delta) {
  if (p != nullptr) p->omega_d = p->omega3 - p->omega2 - delta;
}

maser_status maser_density_create(const double entries[18], double tol, maser_density** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_density{validate_density(unpack(entries), tol)};
  });
}

maser_status maser_density_entries(const maser_density* rho, double out[18]) {
  return guarded([&] { pack(deref(rho).matrix(), out); });
}

void maser_density_destroy(maser_density* rho) { delete rho; }

maser_status maser_trace_distance(const maser_density* a, const maser_density* b, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = trace_distance(deref(a), deref(b));
  });
}

maser_status maser_liouvillian(const maser_engine_params* p, double out[162]) {
  return guarded([&] {
    require_non_null(out, "out");
    const SuperOperator L = build_liouvillian(to_cpp(p));
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        out[2 * (9 * i + j)] = L.matrix(i, j).real();
        out[2 * (9 * i + j) + 1] = L.matrix(i, j).imag();
      }
    }
  });
}

maser_status maser_lindblad_rhs(const maser_engine_params* p, const maser_density* rho, double out[18]) {
  return guarded([&] { pack(lindblad_rhs(deref(rho), to_cpp(p)), out); });
}

maser_status maser_steady_state_analytic(const maser_engine_params* p, maser_density** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_density{steady_state_analytic(to_cpp(p)).rho_ss};
  });
}

maser_status maser_steady_state_nullspace(const maser_engine_params* p, maser_density** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_density{steady_state_nullspace(to_cpp(p))};
  });
}

maser_status maser_steady_state_residual(const maser_engine_params* p, const maser_density* rho, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = steady_state_residual(build_liouvillian(to_cpp(p)), deref(rho));
  });
}

maser_status maser_spectral_gap(const maser_engine_params* p, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = spectral_gap(build_liouvillian(to_cpp(p)));
  });
}

maser_status maser_default_time_step(const maser_engine_params* p, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = default_time_step(to_cpp(p));
  });
}

maser_status maser_evolve(const maser_density* rho0, const maser_engine_params* p, double t_final, double dt,
                          size_t store_every, maser_trajectory** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_trajectory{evolve(deref(rho0), to_cpp(p), t_final, dt, store_every)};
  });
}

maser_status maser_evolve_final(const maser_density* rho0, const maser_engine_params* p, double t_final,
                                double dt, maser_density** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_density{evolve_final(deref(rho0), to_cpp(p), t_final, dt)};
  });
}

size_t maser_trajectory_size(const maser_trajectory* traj) {
  return traj == nullptr ? 0 : traj->traj.samples.size();
}

maser_status maser_trajectory_sample(const maser_trajectory* traj, size_t index, double* time,
                                     double entries[18]) {
  return guarded([&] {
    require_non_null(traj, "trajectory");
    if (index >= traj->traj.samples.size()) throw Error(ErrorKind::InvalidArgument, "sample index out of range");
    const TrajectorySample& s = traj->traj.samples[index];
    if (time != nullptr) *time = s.time;
    if (entries != nullptr) pack(s.rho.matrix(), entries);
  });
}

size_t maser_trajectory_positivity_warnings(const maser_trajectory* traj) {
  return traj == nullptr ? 0 : traj->traj.positivity_warnings;
}

double maser_trajectory_min_eigenvalue(const maser_trajectory* traj) {
  return traj == nullptr ? 0.0 : traj->traj.min_eigenvalue;
}

void maser_trajectory_destroy(maser_trajectory* traj) { delete traj; }

maser_status maser_husimi_q(const maser_density* rho, double theta, double xi, double phi1, double phi2,
                            double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = husimi_q(deref(rho), SU3Angles{theta, xi, phi1, phi2});
  });
}

maser_status maser_sync_measure(const maser_density* rho, double phi1, double phi2, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = sync_measure_closed(deref(rho), phi1, phi2);
  });
}

maser_status maser_sync_measure_quadrature(const maser_density* rho, double phi1, double phi2, int nodes,
                                           double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = sync_measure_quadrature(deref(rho), phi1, phi2, nodes);
  });
}

maser_status maser_sync_max(const maser_density* rho, maser_sync_profile* out) {
  return guarded([&] {
    require_non_null(out, "out");
    const SyncProfile s = sync_max(deref(rho));
    *out = {s.s_max, s.phi1, s.phi2, s.coherence_bound()};
  });
}

maser_status maser_nbar_from_temperature(double omega, double temperature, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nbar_from_temperature(omega, temperature);
  });
}

maser_status maser_temperature_from_nbar(double omega, double nbar, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = temperature_from_nbar(omega, nbar);
  });
}

maser_status maser_thermo_report_compute(const maser_engine_params* p, const maser_density* rho_ss,
                                         maser_thermo_report* out) {
  return guarded([&] {
    require_non_null(out, "out");
    const ThermoReport t = thermo_report(to_cpp(p), deref(rho_ss));
    *out = {t.power_ss,           t.abs_power, t.qdot_h, t.qdot_c, t.efficiency, t.carnot,
            t.entropy_production, t.s_max,     t.bound,  t.t_hot,  t.t_cold,     regime_of(t.regime)};
  });
}

maser_status maser_frame_diagnostics_compute(const maser_density* rho, const maser_engine_params* p,
                                             const double frame_generator[18], double time,
                                             maser_frame_diagnostics* out) {
  return guarded([&] {
    require_non_null(out, "out");
    const FrameDiagnostics d = alicki_frame_diagnostics(deref(rho), to_cpp(p), unpack(frame_generator), time);
    *out = {d.qdot, d.power, d.total, d.cross_term};
  });
}

maser_status maser_sweep_spec_default(maser_sweep_mode mode, maser_sweep_spec** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_sweep_spec{default_sweep_spec(mode_of(mode)), {}};
  });
}

maser_status maser_sweep_spec_from_json(const char* json, maser_sweep_spec** out) {
  return guarded([&] {
    require_non_null(json, "json");
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_sweep_spec{sweep_spec_from_json(json), {}};
  });
}

maser_status maser_sweep_spec_set_mode(maser_sweep_spec* spec, maser_sweep_mode mode) {
  return guarded([&] {
    require_non_null(spec, "spec");
    const SweepMode m = mode_of(mode);
    if (m == spec->spec.mode) return;
    const SweepSpec defaults = default_sweep_spec(m);
    spec->spec.mode = m;
    spec->spec.delta = defaults.delta;
    spec->spec.epsilon = defaults.epsilon;
    spec->spec.tcth = defaults.tcth;
    spec->spec.nbar_c = defaults.nbar_c;
  });
}

maser_status maser_sweep_spec_set_axis(maser_sweep_spec* spec, maser_axis axis, double min, double max,
                                       int points) {
  return guarded([&] {
    require_non_null(spec, "spec");
    if (points < 0) throw Error(ErrorKind::Config, "axis points must be >= 0");
    const Axis a = points == 0 ? Axis{} : Axis{min, max, points};
    static const char* const names[] = {"delta", "epsilon", "tcth", "nbar_c"};
    if (axis < MASER_AXIS_DELTA || axis > MASER_AXIS_NBAR_C) throw Error(ErrorKind::InvalidArgument, "unknown axis");
    a.validate(names[axis]);
    switch (axis) {
      case MASER_AXIS_DELTA: spec->spec.delta = a; break;
      case MASER_AXIS_EPSILON: spec->spec.epsilon = a; break;
      case MASER_AXIS_TCTH:
        spec->spec.tcth = a;
        if (a.enabled()) spec->spec.nbar_c = Axis{};
        break;
      case MASER_AXIS_NBAR_C:
        spec->spec.nbar_c = a;
        if (a.enabled()) spec->spec.tcth = Axis{};
        break;
      default: throw Error(ErrorKind::InvalidArgument, "unknown axis");
    }
  });
}

maser_status maser_sweep_spec_get_axis(const maser_sweep_spec* spec, maser_axis axis, double* min,
                                       double* max, int* points) {
  return guarded([&] {
    require_non_null(spec, "spec");
    const Axis* a = nullptr;
    switch (axis) {
      case MASER_AXIS_DELTA: a = &spec->spec.delta; break;
      case MASER_AXIS_EPSILON: a = &spec->spec.epsilon; break;
      case MASER_AXIS_TCTH: a = &spec->spec.tcth; break;
      case MASER_AXIS_NBAR_C: a = &spec->spec.nbar_c; break;
      default: throw Error(ErrorKind::InvalidArgument, "unknown axis");
    }
    if (min != nullptr) *min = a->min;
    if (max != nullptr) *max = a->max;
    if (points != nullptr) *points = a->points;
  });
}

maser_status maser_sweep_spec_set_threads(maser_sweep_spec* spec, unsigned threads) {
  return guarded([&] {
    require_non_null(spec, "spec");
    spec->spec.threads = threads;
  });
}

maser_status maser_sweep_spec_set_output(maser_sweep_spec* spec, const char* path) {
  return guarded([&] {
    require_non_null(spec, "spec");
    require_non_null(path, "path");
    spec->spec.output = path;
  });
}

const char* maser_sweep_spec_output(const maser_sweep_spec* spec) {
  return spec == nullptr ? "" : spec->spec.output.c_str();
}

const char* maser_sweep_spec_json(const maser_sweep_spec* spec) {
  if (spec == nullptr) return "";
  spec->json = sweep_spec_to_json(spec->spec);
  return spec->json.c_str();
}

maser_status maser_sweep_spec_params(const maser_sweep_spec* spec, maser_engine_params* out) {
  return guarded([&] {
    require_non_null(spec, "spec");
    require_non_null(out, "out");
    *out = to_c(spec->spec.base);
  });
}

maser_status maser_sweep_spec_validate(const maser_sweep_spec* spec) {
  return guarded([&] {
    require_non_null(spec, "spec");
    spec->spec.validate();
  });
}

void maser_sweep_spec_destroy(maser_sweep_spec* spec) { delete spec; }

maser_status maser_sweep_run(const maser_sweep_spec* spec, maser_table** out) {
  return guarded([&] {
    require_non_null(spec, "spec");
    require_non_null(out, "out");
    *out = nullptr;
    *out = new maser_table{run_sweep(spec->spec)};
  });
}

size_t maser_table_size(const maser_table* table) { return table == nullptr ? 0 : table->rows.size(); }

maser_status maser_table_row(const maser_table* table, size_t index, maser_result_row* out) {
  return guarded([&] {
    require_non_null(table, "table");
    require_non_null(out, "out");
    if (index >= table->rows.size()) throw Error(ErrorKind::InvalidArgument, "row index out of range");
    const ResultRow& r = table->rows[index];
    *out = {r.delta.has_value(), r.epsilon.has_value(), r.tcth.has_value(),
            r.delta.value_or(0.0), r.epsilon.value_or(0.0), r.tcth.value_or(0.0),
            r.s_max, r.power_ss, r.abs_power, r.bound,
            r.qdot_h, r.qdot_c, r.efficiency, r.carnot, r.entropy,
            regime_of(r.regime)};
  });
}

maser_status maser_table_write_csv(const maser_table* table, const char* path) {
  return guarded([&] {
    require_non_null(table, "table");
    require_non_null(path, "path");
    write_csv(table->rows, std::string(path));
  });
}

void maser_table_destroy(maser_table* table) { delete table; }

maser_status maser_verify_run(uint64_t seed, int draws, maser_verify_report** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    VerifyOptions options;
    options.seed = seed;
    if (draws > 0) options.draws = draws;
    auto report = std::make_unique<maser_verify_report>();
    report->report = verify_suite(options);
    report->text = report->report.to_text();
    report->json = report->report.to_json();
    *out = report.release();
  });
}

int maser_verify_report_passed(const maser_verify_report* report) {
  return report != nullptr && report->report.passed() ? 1 : 0;
}

size_t maser_verify_report_check_count(const maser_verify_report* report) {
  return report == nullptr ? 0 : report->report.checks.size();
}

maser_status maser_verify_report_check(const maser_verify_report* report, size_t index, maser_check* out) {
  return guarded([&] {
    require_non_null(report, "report");
    require_non_null(out, "out");
    if (index >= report->report.checks.size()) throw Error(ErrorKind::InvalidArgument, "check index out of range");
    const CheckResult& c = report->report.checks[index];
    *out = {c.name.c_str(), c.measured, c.tolerance, c.passed ? 1 : 0};
  });
}

const char* maser_verify_report_text(const maser_verify_report* report) {
  return report == nullptr ? "" : report->text.c_str();
}

const char* maser_verify_report_json(const maser_verify_report* report) {
  return report == nullptr ? "" : report->json.c_str();
}

void maser_verify_report_destroy(maser_verify_report* report) { delete report; }

}  // extern "C"

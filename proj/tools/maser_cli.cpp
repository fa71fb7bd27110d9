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

// maser: command-line front end to libmasersync.
//
//   maser steady  [--config FILE] [--delta D] [--epsilon E] [--nbar-c N] [--json]
//   maser evolve  [--config FILE] [--t-final T] [--dt DT] [--stride K] [--initial ground|mixed|steady] --out FILE
//   maser sweep   [--config FILE] [--mode arnold|temperature] [--out FILE] [axis flags] [--threads N]
//   maser verify  [--seed S] [--draws N] [--json]
//
// Units: hbar = k_B = 1; every frequency and rate shares one inverse-time unit.
// Exit status: 0 success, 1 verification failure, 2 configuration or runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "masersync/masersync.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitError = 2;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(maser_status status, const char* what) {
  if (status != MASER_OK) {
    throw Failure(std::string(what) + ": " + maser_status_string(status) + " (" + maser_last_error() + ")");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* regime_name(maser_regime r) {
  switch (r) {
    case MASER_REGIME_ENGINE: return "engine";
    case MASER_REGIME_FRIDGE: return "fridge";
    case MASER_REGIME_DEGENERATE: return "degenerate";
    case MASER_REGIME_ERROR: return "error";
  }
  return "unknown";
}

// RAII holders for the opaque handles.
template <class T, void (*Destroy)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Density = Handle<maser_density, maser_density_destroy>;
using TrajectoryHandle = Handle<maser_trajectory, maser_trajectory_destroy>;
using SpecHandle = Handle<maser_sweep_spec, maser_sweep_spec_destroy>;
using TableHandle = Handle<maser_table, maser_table_destroy>;
using ReportHandle = Handle<maser_verify_report, maser_verify_report_destroy>;

struct ParamOptions {
  std::string config;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::optional<double> nbar_c;
};

void add_param_options(CLI::App* cmd, ParamOptions& o) {
  cmd->add_option("--config", o.config, "JSON config with a 'params' object");
  cmd->add_option("--delta", o.delta, "Detuning omega32 - omega_d");
  cmd->add_option("--epsilon", o.epsilon, "Drive strength");
  cmd->add_option("--nbar-c", o.nbar_c, "Cold bath occupation");
}

maser_engine_params load_params(const ParamOptions& o) {
  maser_engine_params p;
  maser_default_params(&p);
  if (!o.config.empty()) check(maser_params_from_json(read_file(o.config).c_str(), &p), "config");
  if (o.epsilon) p.epsilon = *o.epsilon;
  if (o.nbar_c) p.nbar_c = *o.nbar_c;
  if (o.delta) maser_params_set_detuning(&p, *o.delta);
  check(maser_params_validate(&p), "params");
  return p;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

int run_steady(const ParamOptions& o, bool as_json) {
  const maser_engine_params p = load_params(o);
  Density analytic, kernel;
  check(maser_steady_state_analytic(&p, analytic.out()), "steady_state_analytic");
  double entries[18];
  check(maser_density_entries(analytic.get(), entries), "density");

  nlohmann::json j;
  j["params"] = {{"omega1", p.omega1}, {"omega2", p.omega2},   {"omega3", p.omega3},
                 {"omega_d", p.omega_d}, {"delta", maser_params_detuning(&p)}, {"epsilon", p.epsilon},
                 {"gamma_h", p.gamma_h}, {"gamma_c", p.gamma_c}, {"nbar_h", p.nbar_h}, {"nbar_c", p.nbar_c}};
  j["rho_ss"] = {{"rho11", entries[0]},    {"rho22", entries[8]},     {"rho33", entries[16]},
                 {"re_rho23", entries[10]}, {"im_rho23", entries[11]}};

  if (maser_steady_state_nullspace(&p, kernel.out()) == MASER_OK) {
    double distance = 0.0;
    check(maser_trace_distance(analytic.get(), kernel.get(), &distance), "trace_distance");
    j["nullspace_trace_distance"] = distance;
  } else {
    j["nullspace_trace_distance"] = nullptr;
    std::cerr << "maser: null-space oracle unavailable: " << maser_last_error() << '\n';
  }

  maser_sync_profile sync;
  check(maser_sync_max(analytic.get(), &sync), "sync_max");
  j["sync"] = {{"s_max", sync.s_max}, {"phi1", sync.phi1}, {"phi2", sync.phi2},
               {"coherence_bound", sync.coherence_bound}};

  maser_thermo_report t;
  check(maser_thermo_report_compute(&p, analytic.get(), &t), "thermo_report");
  j["thermo"] = {{"power_ss", t.power_ss}, {"abs_power", t.abs_power}, {"bound", t.bound},
                 {"qdot_h", t.qdot_h},     {"qdot_c", t.qdot_c},       {"efficiency", t.efficiency},
                 {"carnot", t.carnot},     {"entropy_production", t.entropy_production},
                 {"t_hot", t.t_hot},       {"t_cold", t.t_cold},       {"regime", regime_name(t.regime)}};

  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "steady state (rotating frame)\n"
            << "  rho11 " << fmt(entries[0]) << "  rho22 " << fmt(entries[8]) << "  rho33 " << fmt(entries[16])
            << "\n  rho23 " << fmt(entries[10]) << " + i " << fmt(entries[11]) << '\n'
            << "synchronization\n  S_max " << fmt(sync.s_max) << "  at (phi1, phi2) = (" << fmt(sync.phi1) << ", "
            << fmt(sync.phi2) << ")\n"
            << "thermodynamics (" << regime_name(t.regime) << ")\n"
            << "  P_ss " << fmt(t.power_ss) << "  bound " << fmt(t.bound) << '\n'
            << "  Qdot_h " << fmt(t.qdot_h) << "  Qdot_c " << fmt(t.qdot_c) << '\n'
            << "  efficiency " << fmt(t.efficiency) << "  carnot " << fmt(t.carnot) << "  entropy production "
            << fmt(t.entropy_production) << '\n';
  return kExitOk;
}

int run_evolve(const ParamOptions& o, std::optional<double> t_final, std::optional<double> dt, std::size_t stride,
               const std::string& initial, const std::string& out_path) {
  const maser_engine_params p = load_params(o);
  Density rho0;
  if (initial == "steady") {
    check(maser_steady_state_analytic(&p, rho0.out()), "steady_state_analytic");
  } else {
    double e[18] = {};
    if (initial == "ground") {
      e[0] = 1.0;
    } else if (initial == "mixed") {
      e[0] = e[8] = e[16] = 1.0 / 3.0;
    } else {
      throw Failure("unknown initial state '" + initial + "' (ground, mixed or steady)");
    }
    check(maser_density_create(e, 1e-12, rho0.out()), "initial state");
  }
  double step = 0.0;
  if (dt) {
    step = *dt;
  } else {
    check(maser_default_time_step(&p, &step), "default_time_step");
  }
  const double horizon = t_final ? *t_final : 50.0 / p.gamma_h;

  TrajectoryHandle traj;
  check(maser_evolve(rho0.get(), &p, horizon, step, stride, traj.out()), "evolve");
  if (maser_trajectory_positivity_warnings(traj.get()) > 0) {
    std::cerr << "maser: warning: " << maser_trajectory_positivity_warnings(traj.get())
              << " stored states have an eigenvalue below -1e-8 (min " << maser_trajectory_min_eigenvalue(traj.get())
              << ")\n";
  }

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure("cannot open '" + out_path + "' for writing");
  out << "t,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23\n";
  for (std::size_t k = 0; k < maser_trajectory_size(traj.get()); ++k) {
    double t = 0.0;
    double e[18];
    check(maser_trajectory_sample(traj.get(), k, &t, e), "trajectory");
    out << fmt(t) << ',' << fmt(e[0]) << ',' << fmt(e[8]) << ',' << fmt(e[16]) << ',' << fmt(e[2]) << ','
        << fmt(e[3]) << ',' << fmt(e[4]) << ',' << fmt(e[5]) << ',' << fmt(e[10]) << ',' << fmt(e[11]) << '\n';
  }
  if (!out) throw Failure("write to '" + out_path + "' failed");
  std::cerr << "maser: wrote " << maser_trajectory_size(traj.get()) << " samples to " << out_path << '\n';
  return kExitOk;
}

struct AxisFlags {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<int> points;

  bool any() const { return min || max || points; }
};

void add_axis_flags(CLI::App* cmd, const std::string& name, AxisFlags& f) {
  cmd->add_option("--" + name + "-min", f.min, "Lower end of the " + name + " axis");
  cmd->add_option("--" + name + "-max", f.max, "Upper end of the " + name + " axis");
  cmd->add_option("--" + name + "-points", f.points, "Number of " + name + " grid points");
}

void apply_axis(maser_sweep_spec* spec, maser_axis axis, const AxisFlags& f) {
  if (!f.any()) return;
  double lo = 0.0, hi = 0.0;
  int n = 0;
  check(maser_sweep_spec_get_axis(spec, axis, &lo, &hi, &n), "axis");
  check(maser_sweep_spec_set_axis(spec, axis, f.min.value_or(lo), f.max.value_or(hi), f.points.value_or(n == 0 ? 2 : n)),
        "axis");
}

struct SweepOptions {
  std::string config;
  std::string mode;
  std::string out;
  AxisFlags delta, epsilon, tcth;
  std::optional<unsigned> threads;
};

int run_sweep_cmd(const SweepOptions& o) {
  SpecHandle spec;
  if (!o.config.empty()) {
    check(maser_sweep_spec_from_json(read_file(o.config).c_str(), spec.out()), "config");
  } else {
    const maser_sweep_mode m = o.mode == "temperature" ? MASER_SWEEP_TEMPERATURE : MASER_SWEEP_ARNOLD;
    check(maser_sweep_spec_default(m, spec.out()), "default spec");
  }
  if (!o.mode.empty()) {
    if (o.mode != "arnold" && o.mode != "temperature") throw Failure("unknown mode '" + o.mode + "'");
    check(maser_sweep_spec_set_mode(spec.get(), o.mode == "temperature" ? MASER_SWEEP_TEMPERATURE : MASER_SWEEP_ARNOLD),
          "mode");
  }
  apply_axis(spec.get(), MASER_AXIS_DELTA, o.delta);
  apply_axis(spec.get(), MASER_AXIS_EPSILON, o.epsilon);
  apply_axis(spec.get(), MASER_AXIS_TCTH, o.tcth);
  if (o.threads) check(maser_sweep_spec_set_threads(spec.get(), *o.threads), "threads");
  if (!o.out.empty()) check(maser_sweep_spec_set_output(spec.get(), o.out.c_str()), "output");
  check(maser_sweep_spec_validate(spec.get()), "sweep spec");

  TableHandle table;
  check(maser_sweep_run(spec.get(), table.out()), "sweep");
  const std::string path = maser_sweep_spec_output(spec.get());
  check(maser_table_write_csv(table.get(), path.c_str()), "write_csv");
  std::size_t errors = 0;
  for (std::size_t k = 0; k < maser_table_size(table.get()); ++k) {
    maser_result_row row;
    check(maser_table_row(table.get(), k, &row), "row");
    if (row.regime == MASER_REGIME_ERROR) ++errors;
  }
  std::cerr << "maser: wrote " << maser_table_size(table.get()) << " rows to " << path;
  if (errors > 0) std::cerr << " (" << errors << " cells failed)";
  std::cerr << '\n';
  return kExitOk;
}

int run_verify(std::uint64_t seed, int draws, bool as_json) {
  ReportHandle report;
  check(maser_verify_run(seed, draws, report.out()), "verify");
  if (as_json) {
    std::cout << maser_verify_report_json(report.get()) << '\n';
  } else {
    std::cout << maser_verify_report_text(report.get());
  }
  return maser_verify_report_passed(report.get()) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven three-level maser heat engine: steady state, synchronization and thermodynamics.\n"
               "Units: hbar = k_B = 1; all frequencies and rates share one inverse-time unit."};
  app.require_subcommand(1);

  ParamOptions steady_opts;
  bool steady_json = false;
  auto* steady = app.add_subcommand("steady", "Closed-form steady state, S_max and thermodynamic report");
  add_param_options(steady, steady_opts);
  steady->add_flag("--json", steady_json, "Emit JSON");

  ParamOptions evolve_opts;
  std::optional<double> t_final, dt;
  std::size_t stride = 1;
  std::string initial = "ground";
  std::string evolve_out;
  auto* evolve = app.add_subcommand("evolve", "Fixed-step RK4 integration in the rotating frame");
  add_param_options(evolve, evolve_opts);
  evolve->add_option("--t-final", t_final, "Integration horizon (default 50/gamma_h)");
  evolve->add_option("--dt", dt, "Step size (default 0.1 / fastest rate)");
  evolve->add_option("--stride", stride, "Store every k-th step");
  evolve->add_option("--initial", initial, "Initial state: ground, mixed or steady");
  evolve->add_option("--out", evolve_out, "Trajectory CSV")->required();

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Parameter-grid sweep written as CSV");
  sweep->add_option("--config", sweep_opts.config, "JSON sweep config");
  sweep->add_option("--mode", sweep_opts.mode, "arnold or temperature");
  sweep->add_option("--out", sweep_opts.out, "Output CSV path");
  add_axis_flags(sweep, "delta", sweep_opts.delta);
  add_axis_flags(sweep, "epsilon", sweep_opts.epsilon);
  add_axis_flags(sweep, "tcth", sweep_opts.tcth);
  sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)");

  std::uint64_t seed = 1;
  int draws = 200;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Run the self-verification suite");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--draws", draws, "Random parameter draws per check");
  verify->add_flag("--json", verify_json, "Emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*steady) return run_steady(steady_opts, steady_json);
    if (*evolve) return run_evolve(evolve_opts, t_final, dt, stride, initial, evolve_out);
    if (*sweep) return run_sweep_cmd(sweep_opts);
    if (*verify) return run_verify(seed, draws, verify_json);
  } catch (const Failure& e) {
    std::cerr << "maser: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

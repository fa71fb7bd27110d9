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

#include "masersync/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "masersync/dynamics.hpp"
#include "masersync/thermo.hpp"

namespace masersync {
namespace {

using nlohmann::json;

constexpr double kBoundSlack = 1e-12;

void require(const Axis& a, const char* name, bool wanted, SweepMode mode) {
  if (a.enabled() != wanted) {
    throw Error(ErrorKind::Config, std::string("axis '") + name + "' is " +
                                       (wanted ? "required" : "not allowed") + " in " +
                                       sweep_mode_name(mode) + " mode");
  }
}

json axis_to_json(const Axis& a) { return json{{"min", a.min}, {"max", a.max}, {"points", a.points}}; }

Axis axis_from_json(const json& j, const char* name) {
  if (!j.is_object()) throw Error(ErrorKind::Config, std::string("axis '") + name + "' must be an object");
  Axis a;
  for (const auto& [key, value] : j.items()) {
    if (key == "min") a.min = value.get<double>();
    else if (key == "max") a.max = value.get<double>();
    else if (key == "points") a.points = value.get<int>();
    else throw Error(ErrorKind::Config, "axis '" + std::string(name) + "': unknown key '" + key + "'");
  }
  if (a.points < 1) throw Error(ErrorKind::Config, std::string("axis '") + name + "': points must be >= 1");
  return a;
}

void params_from_json(const json& j, EngineParams& p) {
  if (!j.is_object()) throw Error(ErrorKind::Config, "params must be an object");
  for (const auto& [key, value] : j.items()) {
    double* field = nullptr;
    if (key == "omega1") field = &p.omega1;
    else if (key == "omega2") field = &p.omega2;
    else if (key == "omega3") field = &p.omega3;
    else if (key == "omega_d") field = &p.omega_d;
    else if (key == "epsilon") field = &p.epsilon;
    else if (key == "gamma_h") field = &p.gamma_h;
    else if (key == "gamma_c") field = &p.gamma_c;
    else if (key == "nbar_h") field = &p.nbar_h;
    else if (key == "nbar_c") field = &p.nbar_c;
    if (field == nullptr && key != "delta") {
      throw Error(ErrorKind::Config, "params: unknown key '" + key + "'");
    }
    if (field != nullptr) *field = value.get<double>();
  }
  // delta is applied last so it refers to the final level spacing.
  if (j.contains("delta")) p = p.with_detuning(j.at("delta").get<double>());
}

json params_to_json(const EngineParams& p) {
  return json{{"omega1", p.omega1},   {"omega2", p.omega2},   {"omega3", p.omega3},
              {"omega_d", p.omega_d}, {"epsilon", p.epsilon}, {"gamma_h", p.gamma_h},
              {"gamma_c", p.gamma_c}, {"nbar_h", p.nbar_h},   {"nbar_c", p.nbar_c}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
}

ResultRow error_row() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ResultRow r;
  r.s_max = r.power_ss = r.abs_power = r.bound = nan;
  r.qdot_h = r.qdot_c = r.efficiency = r.carnot = r.entropy = nan;
  r.regime = "error";
  return r;
}

void append_number(std::string& line, double v) {
  if (std::isnan(v)) {
    line += "nan";
  } else if (std::isinf(v)) {
    line += v > 0 ? "inf" : "-inf";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    line += buf;
  }
}

void append_optional(std::string& line, const std::optional<double>& v) {
  if (v) append_number(line, *v);
}

}  // namespace

const char* sweep_mode_name(SweepMode m) noexcept {
  return m == SweepMode::Arnold ? "arnold" : "temperature";
}

SweepMode parse_sweep_mode(const std::string& name) {
  if (name == "arnold") return SweepMode::Arnold;
  if (name == "temperature") return SweepMode::Temperature;
  throw Error(ErrorKind::Config, "unknown sweep mode '" + name + "' (expected arnold or temperature)");
}

void Axis::validate(const std::string& name) const {
  if (!enabled()) return;
  const bool finite = std::isfinite(min) && std::isfinite(max);
  const bool single = points == 1 && min == max;
  const bool range = points >= 2 && min < max;
  if (!finite || !(single || range)) {
    throw Error(ErrorKind::Config,
                "axis '" + name + "': need points >= 2 with min < max, or a single point with min == max");
  }
}

double Axis::value(int k) const {
  if (points == 1) return min;
  if (k == points - 1) return max;
  return min + (max - min) * k / (points - 1);
}

void SweepSpec::validate() const {
  delta.validate("delta");
  epsilon.validate("epsilon");
  tcth.validate("tcth");
  nbar_c.validate("nbar_c");
  if (mode == SweepMode::Arnold) {
    require(delta, "delta", true, mode);
    require(epsilon, "epsilon", true, mode);
    require(tcth, "tcth", false, mode);
    require(nbar_c, "nbar_c", false, mode);
  } else {
    require(epsilon, "epsilon", false, mode);
    if (tcth.enabled() == nbar_c.enabled()) {
      throw Error(ErrorKind::Config, "temperature mode needs exactly one of the axes 'tcth' and 'nbar_c'");
    }
    if (tcth.enabled() && tcth.min < 0.0) throw Error(ErrorKind::Config, "axis 'tcth' must be >= 0");
    if (nbar_c.enabled() && nbar_c.min < 0.0) throw Error(ErrorKind::Config, "axis 'nbar_c' must be >= 0");
    if (!(base.nbar_h > 0.0)) throw Error(ErrorKind::Config, "temperature mode needs nbar_h > 0");
  }
  if (mode == SweepMode::Arnold && epsilon.min < 0.0) {
    throw Error(ErrorKind::Config, "axis 'epsilon' must be >= 0");
  }
  try {
    base.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  if (cell_count() > kMaxSweepCells) {
    throw Error(ErrorKind::Config, "sweep grid exceeds " + std::to_string(kMaxSweepCells) + " cells");
  }
}

std::size_t SweepSpec::cell_count() const {
  std::size_t n = 1;
  for (const Axis* a : {&delta, &epsilon, &tcth, &nbar_c}) {
    if (a->enabled()) n *= static_cast<std::size_t>(a->points);
  }
  return n;
}

SweepSpec default_sweep_spec(SweepMode mode) {
  SweepSpec s;
  s.mode = mode;
  s.base = EngineParams{};  // gamma_h = 1e-2, gamma_c = 10 gamma_h, nbar_h = 5, nbar_c = 1e-3,
                            // omega32 = 10/gamma_h, omega21 = 1/gamma_h, eps = 0.05
  s.base = s.base.with_detuning(0.0);
  if (mode == SweepMode::Arnold) {
    s.delta = {-0.5, 0.5, 101};
    s.epsilon = {0.0, 0.1, 51};
    s.output = "arnold.csv";
  } else {
    s.delta = {0.0, 0.25, 2};
    s.tcth = {0.0, 0.2, 201};
    s.output = "temperature.csv";
  }
  return s;
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  try {
    const SweepMode mode = parse_sweep_mode(j.value("mode", std::string("arnold")));
    SweepSpec s = default_sweep_spec(mode);
    for (const auto& [key, value] : j.items()) {
      if (key == "mode") continue;
      if (key == "params") {
        params_from_json(value, s.base);
      } else if (key == "axes") {
        if (!value.is_object()) throw Error(ErrorKind::Config, "axes must be an object");
        s.delta = s.epsilon = s.tcth = s.nbar_c = Axis{};
        for (const auto& [name, axis] : value.items()) {
          if (name == "delta") s.delta = axis_from_json(axis, "delta");
          else if (name == "epsilon") s.epsilon = axis_from_json(axis, "epsilon");
          else if (name == "tcth") s.tcth = axis_from_json(axis, "tcth");
          else if (name == "nbar_c") s.nbar_c = axis_from_json(axis, "nbar_c");
          else throw Error(ErrorKind::Config, "unknown axis '" + name + "'");
        }
      } else if (key == "output") {
        s.output = value.get<std::string>();
      } else if (key == "threads") {
        s.threads = value.get<unsigned>();
      } else {
        throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config type error: ") + e.what());
  }
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
  json axes = json::object();
  if (spec.delta.enabled()) axes["delta"] = axis_to_json(spec.delta);
  if (spec.epsilon.enabled()) axes["epsilon"] = axis_to_json(spec.epsilon);
  if (spec.tcth.enabled()) axes["tcth"] = axis_to_json(spec.tcth);
  if (spec.nbar_c.enabled()) axes["nbar_c"] = axis_to_json(spec.nbar_c);
  json j{{"mode", sweep_mode_name(spec.mode)},
         {"params", params_to_json(spec.base)},
         {"axes", axes},
         {"output", spec.output},
         {"threads", spec.threads}};
  return j.dump(2);
}

EngineParams engine_params_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  EngineParams p = EngineParams{}.with_detuning(0.0);
  try {
    if (j.contains("params")) {
      params_from_json(j.at("params"), p);
    } else {
      params_from_json(j, p);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config type error: ") + e.what());
  }
  return p;
}

ResultRow evaluate_point(const EngineParams& p) {
  try {
    const SteadyStateSolution ss = steady_state_analytic(p);
    const ThermoReport t = thermo_report(p, ss.rho_ss);
    ResultRow r;
    r.s_max = t.s_max;
    r.power_ss = t.power_ss;
    r.abs_power = t.abs_power;
    r.bound = t.bound;
    r.qdot_h = t.qdot_h;
    r.qdot_c = t.qdot_c;
    r.efficiency = t.efficiency;
    r.carnot = t.carnot;
    r.entropy = t.entropy_production;
    r.regime = regime_name(t.regime);
    return r;
  } catch (const Error&) {
    return error_row();
  }
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const bool temperature = spec.mode == SweepMode::Temperature;
  const Axis& inner = temperature ? (spec.tcth.enabled() ? spec.tcth : spec.nbar_c) : spec.epsilon;
  const int n_inner = inner.points;
  const std::size_t cells = spec.cell_count();
  const double t_hot = temperature ? temperature_from_nbar(spec.base.omega31(), spec.base.nbar_h) : 0.0;

  auto compute = [&](std::size_t index) {
    const int i = static_cast<int>(index / n_inner);
    const int k = static_cast<int>(index % n_inner);
    EngineParams p = spec.base;
    std::optional<double> delta;
    if (spec.delta.enabled()) {
      delta = spec.delta.value(i);
      p = p.with_detuning(*delta);
    }
    if (!temperature) {
      p.epsilon = inner.value(k);
      ResultRow r = evaluate_point(p);
      r.delta = delta;
      r.epsilon = p.epsilon;
      return r;
    }
    if (spec.tcth.enabled()) {
      p.nbar_c = nbar_from_temperature(p.omega21(), inner.value(k) * t_hot);
    } else {
      p.nbar_c = inner.value(k);
    }
    ResultRow r = evaluate_point(p);
    r.delta = delta;
    r.tcth = temperature_from_nbar(p.omega21(), p.nbar_c) / t_hot;
    return r;
  };

  std::vector<ResultRow> rows(cells);
  unsigned workers = spec.threads == 0 ? std::thread::hardware_concurrency() : spec.threads;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cells)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < cells; idx = next++) rows[idx] = compute(idx);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  std::string text = kCsvHeader;
  text += '\n';
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const ResultRow& r = rows[n];
    if (r.regime != "error" && !(r.abs_power <= r.bound + kBoundSlack)) {
      throw Error(ErrorKind::BoundViolation,
                  "write_csv: row " + std::to_string(n) + " violates |power_ss| <= bound");
    }
    std::string line;
    append_optional(line, r.delta);
    line += ',';
    append_optional(line, r.epsilon);
    line += ',';
    append_optional(line, r.tcth);
    for (double v : {r.s_max, r.power_ss, r.abs_power, r.bound, r.qdot_h, r.qdot_c, r.efficiency,
                     r.carnot, r.entropy}) {
      line += ',';
      append_number(line, v);
    }
    line += ',';
    line += r.regime;
    line += '\n';
    text += line;
  }
  out << text;
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ostringstream buffer;
  write_csv(rows, buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace masersync

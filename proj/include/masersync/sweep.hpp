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

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "masersync/core.hpp"

namespace masersync {

enum class SweepMode { Arnold, Temperature };

const char* sweep_mode_name(SweepMode m) noexcept;
SweepMode parse_sweep_mode(const std::string& name);

// Linearly spaced axis. A single point requires min == max.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  bool enabled() const noexcept { return points > 0; }
  double value(int k) const;
  // Throws Config unless disabled, a single point with min == max, or
  // points >= 2 with min < max.
  void validate(const std::string& name) const;
};

// Arnold mode sweeps delta (outer) x epsilon (inner). Temperature mode keeps
// nbar_h fixed and sweeps the cold bath, either through T_c/T_h (tcth) or
// directly through nbar_c, optionally nested inside a delta axis.
struct SweepSpec {
  SweepMode mode = SweepMode::Arnold;
  Axis delta;
  Axis epsilon;
  Axis tcth;
  Axis nbar_c;
  EngineParams base;
  std::string output;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
  std::size_t cell_count() const;
};

inline constexpr std::size_t kMaxSweepCells = 10'000'000;

// Bundled default grids around the reference engine.
SweepSpec default_sweep_spec(SweepMode mode);

// JSON document with keys mode, params, axes, output, threads. Missing keys
// fall back to default_sweep_spec(mode); unknown keys are rejected.
SweepSpec sweep_spec_from_json(const std::string& text);
std::string sweep_spec_to_json(const SweepSpec& spec);

// Reads EngineParams from the "params" object (or the top level) of a JSON
// document, defaulting missing fields.
EngineParams engine_params_from_json(const std::string& text);

struct ResultRow {
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::optional<double> tcth;
  double s_max = 0.0;
  double power_ss = 0.0;
  double abs_power = 0.0;
  double bound = 0.0;
  double qdot_h = 0.0;
  double qdot_c = 0.0;
  double efficiency = 0.0;
  double carnot = 0.0;
  double entropy = 0.0;
  std::string regime;  // engine | fridge | degenerate | error
};

// Steady state, sync maximum and thermodynamics of one parameter point.
// Library errors are folded into regime "error" with NaN numerics.
ResultRow evaluate_point(const EngineParams& p);

// Row-major over the declared axes (delta, epsilon, tcth/nbar_c). Output is
// independent of the worker count.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "delta,epsilon,tc_over_th,s_max,power_ss,abs_power,bound,qdot_h,qdot_c,efficiency,carnot,"
    "entropy,regime";

// Header line plus one line per row, LF line endings, numbers as %.11e.
// Throws BoundViolation if a row breaks |power_ss| <= bound + 1e-12.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace masersync

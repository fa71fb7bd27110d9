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

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "masersync/core.hpp"
#include "masersync/thermo.hpp"

namespace masersync {

// Sampling box for random parameter draws. Rates are log-uniform; level
// frequencies are fixed at omega21 = 100, omega32 = 1000.
struct DrawRanges {
  double gamma_min = 1e-4;
  double gamma_max = 1.0;
  double nbar_max = 10.0;
  double epsilon_max = 0.2;
  double delta_max = 1.0;
};

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64& rng);

EngineParams random_engine_params(std::mt19937_64& rng, const DrawRanges& ranges = {});
// Draws temperatures, then derives both occupations from them.
EngineParams random_thermal_engine_params(std::mt19937_64& rng, const DrawRanges& ranges = {});
DensityMatrix random_density(std::mt19937_64& rng);
Complex3x3 random_hermitian(std::mt19937_64& rng, double scale = 1.0);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

using ThermoFunction = std::function<ThermoReport(const EngineParams&, const DensityMatrix&)>;

struct VerifyOptions {
  std::uint64_t seed = 1;
  int draws = 200;
  int quadrature_nodes = 64;
  // Replaceable to exercise the checks against a faulty implementation.
  ThermoFunction thermo = thermo_report;
};

// Oracle equivalence, conservation laws, the power bound, efficiency,
// quadrature and frame-invariance checks, each reported against its
// tolerance. Deterministic for a given seed.
VerifyReport verify_suite(const VerifyOptions& options = {});

}  // namespace masersync

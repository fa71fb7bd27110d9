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

#include <string>

#include "masersync/core.hpp"

namespace masersync {

// Mean occupation of a single-mode thermal field, 1/(e^{omega/T} - 1); zero at T = 0.
double nbar_from_temperature(double omega, double temperature);
// Inverse of nbar_from_temperature; zero occupation maps to T = 0.
double temperature_from_nbar(double omega, double nbar);

struct BathSpec {
  double omega = 0.0;
  double temperature = 0.0;
  double nbar = 0.0;

  static BathSpec from_temperature(double omega, double temperature);
  static BathSpec from_nbar(double omega, double nbar);
};

enum class Regime { Engine, Fridge, Degenerate };

const char* regime_name(Regime r) noexcept;
Regime classify_regime(const EngineParams& p);

struct ThermoReport {
  double power_ss = 0.0;  // negative while work is extracted
  double abs_power = 0.0;
  double qdot_h = 0.0;
  double qdot_c = 0.0;
  double efficiency = 0.0;  // omega32 / omega31
  double carnot = 0.0;      // 1 - T_c/T_h, NaN when T_h = 0
  double entropy_production = 0.0;
  double s_max = 0.0;
  double bound = 0.0;  // 16 pi |eps| omega32 s_max
  double t_hot = 0.0;
  double t_cold = 0.0;
  Regime regime = Regime::Degenerate;
};

struct HeatCurrents {
  double hot = 0.0;
  double cold = 0.0;
};

// tr{L_h[rho] H0} and tr{L_c[rho] H0} for an arbitrary state.
HeatCurrents population_heat_currents(const EngineParams& p, const DensityMatrix& rho);
// Same quantities at the unique steady state, free of cancellation when
// nbar_h is close to nbar_c.
HeatCurrents steady_heat_currents(const EngineParams& p);

// Steady-state power, heat currents, efficiency, entropy production and the
// synchronization bound. The hot bath temperature is inferred from
// (omega31, nbar_h), the cold one from (omega21, nbar_c). Throws
// NotSteadyState when ||L vec(rho_ss)|| > 1e-8.
ThermoReport thermo_report(const EngineParams& p, const DensityMatrix& rho_ss);

struct FrameDiagnostics {
  double qdot = 0.0;
  double power = 0.0;
  double total = 0.0;       // d<H>/dt, frame independent
  double cross_term = 0.0;  // i tr{[H, x] rho}
};

// Heat current and power in the frame U = e^{-ixt}, evaluated for the
// lab-frame state rho at time t under H(t) = H0 + eps(e^{i wd t} s23 + h.c.).
// Throws InvalidArgument if the frame generator is not Hermitian.
FrameDiagnostics alicki_frame_diagnostics(const DensityMatrix& rho, const EngineParams& p,
                                          const Complex3x3& frame_generator, double time = 0.0);

// Lab-frame H(t) and dH/dt.
Complex3x3 lab_hamiltonian(const EngineParams& p, double time);
Complex3x3 lab_hamiltonian_derivative(const EngineParams& p, double time);

}  // namespace masersync

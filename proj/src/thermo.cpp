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

#include "masersync/thermo.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "masersync/dynamics.hpp"
#include "masersync/sync.hpp"

namespace masersync {
namespace {

constexpr double kSteadyResidualGate = 1e-8;

Complex3x3 apply_dissipator(const Complex3x3& op, const Complex3x3& rho) {
  const Complex3x3 n = op.adjoint() * op;
  return op * rho * op.adjoint() - 0.5 * (n * rho + rho * n);
}

// -Q/T with the T = 0 limit taken explicitly.
double entropy_flow(double heat, double temperature) {
  if (temperature > 0.0) return -heat / temperature;
  if (heat == 0.0) return 0.0;
  return heat < 0.0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
}

}  // namespace

double nbar_from_temperature(double omega, double temperature) {
  if (!(omega > 0.0) || !(temperature >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "nbar_from_temperature: need omega > 0 and T >= 0");
  }
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double temperature_from_nbar(double omega, double nbar) {
  if (!(omega > 0.0) || !(nbar >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "temperature_from_nbar: need omega > 0 and nbar >= 0");
  }
  if (nbar == 0.0) return 0.0;
  return omega / std::log1p(1.0 / nbar);
}

BathSpec BathSpec::from_temperature(double omega, double temperature) {
  return {omega, temperature, nbar_from_temperature(omega, temperature)};
}

BathSpec BathSpec::from_nbar(double omega, double nbar) {
  return {omega, temperature_from_nbar(omega, nbar), nbar};
}

const char* regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::Engine: return "engine";
    case Regime::Fridge: return "fridge";
    case Regime::Degenerate: return "degenerate";
  }
  return "unknown";
}

Regime classify_regime(const EngineParams& p) {
  if (p.nbar_h > p.nbar_c) return Regime::Engine;
  if (p.nbar_h < p.nbar_c) return Regime::Fridge;
  return Regime::Degenerate;
}

HeatCurrents population_heat_currents(const EngineParams& p, const DensityMatrix& rho) {
  const double r11 = rho.population(0);
  const double r22 = rho.population(1);
  const double r33 = rho.population(2);
  return {p.gamma_h * p.omega31() * (p.nbar_h * (r11 - r33) - r33),
          p.gamma_c * p.omega21() * (p.nbar_c * (r11 - r22) - r22)};
}

// Population form with the closed-form steady state substituted; the
// difference n_h rho11 - (n_h + 1) rho33 is taken analytically.
HeatCurrents steady_heat_currents(const EngineParams& p) {
  const SteadyStateSolution ss = steady_state_analytic(p);
  const double flux = 2.0 * p.gamma_h * p.gamma_c * p.epsilon * p.epsilon * decay_rates(p).gamma23.real() *
                      (p.nbar_h - p.nbar_c) / ss.beta;
  return {flux * p.omega31(), -flux * p.omega21()};
}

ThermoReport thermo_report(const EngineParams& p, const DensityMatrix& rho_ss) {
  const SuperOperator L = build_liouvillian(p);
  const double residual = steady_state_residual(L, rho_ss);
  if (!(residual <= kSteadyResidualGate)) {
    throw Error(ErrorKind::NotSteadyState,
                "thermo_report: state is not stationary (residual " + std::to_string(residual) + ")");
  }

  const double w21 = p.omega21();
  const double w31 = p.omega31();
  const double w32 = p.omega32();
  const HeatCurrents q = steady_heat_currents(p);

  ThermoReport r;
  r.power_ss = 2.0 * p.epsilon * w32 * rho_ss(1, 2).imag();
  r.abs_power = std::abs(r.power_ss);
  r.qdot_h = q.hot;
  r.qdot_c = q.cold;
  r.efficiency = w32 / w31;
  r.t_hot = temperature_from_nbar(w31, p.nbar_h);
  r.t_cold = temperature_from_nbar(w21, p.nbar_c);
  r.carnot = r.t_hot > 0.0 ? 1.0 - r.t_cold / r.t_hot : std::numeric_limits<double>::quiet_NaN();
  r.entropy_production = entropy_flow(r.qdot_h, r.t_hot) + entropy_flow(r.qdot_c, r.t_cold);
  r.s_max = sync_max(rho_ss).s_max;
  r.bound = 16.0 * std::numbers::pi * std::abs(p.epsilon) * w32 * r.s_max;
  r.regime = classify_regime(p);
  return r;
}

Complex3x3 lab_hamiltonian(const EngineParams& p, double time) {
  const Complex phase = std::polar(1.0, p.omega_d * time);
  return bare_hamiltonian(p) + p.epsilon * (phase * sigma(1, 2) + std::conj(phase) * sigma(2, 1));
}

Complex3x3 lab_hamiltonian_derivative(const EngineParams& p, double time) {
  const Complex phase = std::polar(1.0, p.omega_d * time);
  const Complex i_wd(0.0, p.omega_d);
  return p.epsilon * (i_wd * phase * sigma(1, 2) - i_wd * std::conj(phase) * sigma(2, 1));
}

FrameDiagnostics alicki_frame_diagnostics(const DensityMatrix& rho, const EngineParams& p,
                                          const Complex3x3& frame_generator, double time) {
  p.validate();
  if (!all_finite(frame_generator) ||
      hermiticity_defect(frame_generator) > 1e-12 * std::max(1.0, max_abs(frame_generator))) {
    throw Error(ErrorKind::InvalidArgument, "alicki_frame_diagnostics: frame generator is not Hermitian");
  }
  const Complex3x3& r = rho.matrix();
  const Complex3x3 h = lab_hamiltonian(p, time);
  const Complex3x3 dh = lab_hamiltonian_derivative(p, time);
  const Complex minus_i(0.0, -1.0);

  Complex3x3 drho = minus_i * (h * r - r * h);
  drho += p.gamma_h * p.nbar_h * apply_dissipator(sigma(2, 0), r);
  drho += p.gamma_h * (p.nbar_h + 1.0) * apply_dissipator(sigma(0, 2), r);
  drho += p.gamma_c * p.nbar_c * apply_dissipator(sigma(1, 0), r);
  drho += p.gamma_c * (p.nbar_c + 1.0) * apply_dissipator(sigma(0, 1), r);

  const Complex3x3& x = frame_generator;
  FrameDiagnostics d;
  d.cross_term = (Complex(0.0, 1.0) * ((h * x - x * h) * r).trace()).real();
  d.qdot = d.cross_term + (drho * h).trace().real();
  d.power = -d.cross_term + (dh * r).trace().real();
  d.total = d.qdot + d.power;
  return d;
}

}  // namespace masersync

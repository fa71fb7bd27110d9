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

#include "masersync/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "masersync/dynamics.hpp"
#include "masersync/sync.hpp"

namespace masersync {
namespace {

constexpr double kPi = std::numbers::pi;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * uniform01(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

CheckResult make_check(std::string name, double measured, double tolerance, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.passed = std::isfinite(measured) && measured <= tolerance;
  c.detail = std::move(detail);
  return c;
}

double max_entry_deviation(const Complex3x3& a, const Complex3x3& b) { return max_abs(a - b); }

}  // namespace

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

EngineParams random_engine_params(std::mt19937_64& rng, const DrawRanges& r) {
  EngineParams p;
  p.omega1 = 0.0;
  p.omega2 = 100.0;
  p.omega3 = 1100.0;
  p.gamma_h = log_uniform(rng, r.gamma_min, r.gamma_max);
  p.gamma_c = log_uniform(rng, r.gamma_min, r.gamma_max);
  p.nbar_h = uniform(rng, 0.0, r.nbar_max);
  p.nbar_c = uniform(rng, 0.0, r.nbar_max);
  p.epsilon = uniform(rng, 0.0, r.epsilon_max);
  return p.with_detuning(uniform(rng, -r.delta_max, r.delta_max));
}

EngineParams random_thermal_engine_params(std::mt19937_64& rng, const DrawRanges& r) {
  EngineParams p = random_engine_params(rng, r);
  const double t_hot = log_uniform(rng, 50.0, 1e4);
  const double t_cold = log_uniform(rng, 50.0, 1e4);
  p.nbar_h = nbar_from_temperature(p.omega31(), t_hot);
  p.nbar_c = nbar_from_temperature(p.omega21(), t_cold);
  return p;
}

DensityMatrix random_density(std::mt19937_64& rng) {
  Complex3x3 g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  }
  Complex3x3 m = g * g.adjoint();
  m /= m.trace().real();
  return validate_density(m, 1e-10);
}

Complex3x3 random_hermitian(std::mt19937_64& rng, double scale) {
  Complex3x3 g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  }
  return 0.5 * scale * (g + g.adjoint());
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  for (const CheckResult& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured " << c.measured << "  tolerance "
       << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  os << (passed() ? "all checks passed" : "verification FAILED") << '\n';
  return os.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed},
                           {"detail", c.detail}});
  }
  return j.dump(2);
}

VerifyReport verify_suite(const VerifyOptions& options) {
  VerifyReport report;
  report.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  const int draws = std::max(1, options.draws);

  // Steady state: closed form vs kernel of the generator, and the
  // element-wise equations vs the superoperator.
  {
    double ss_dev = 0.0;
    double rhs_dev = 0.0;
    double fixed_point = 0.0;
    for (int n = 0; n < draws; ++n) {
      const EngineParams p = random_engine_params(rng);
      const DensityMatrix analytic = steady_state_analytic(p).rho_ss;
      const DensityMatrix kernel = steady_state_nullspace(p);
      ss_dev = std::max(ss_dev, max_entry_deviation(analytic.matrix(), kernel.matrix()));
      const SuperOperator L = build_liouvillian(p);
      fixed_point = std::max(fixed_point,
                             steady_state_residual(L, analytic) / L.matrix.norm());
      const DensityMatrix rho = random_density(rng);
      rhs_dev = std::max(rhs_dev, max_entry_deviation(lindblad_rhs(rho, p), L.apply(rho.matrix())));
    }
    report.checks.push_back(make_check("steady_state_closed_form_vs_nullspace", ss_dev, 1e-10,
                                       "max elementwise deviation"));
    report.checks.push_back(make_check("steady_state_fixed_point", fixed_point, 1e-10,
                                       "||L vec(rho_ss)|| / ||L||"));
    report.checks.push_back(make_check("equations_of_motion_vs_superoperator", rhs_dev, 1e-13,
                                       "max elementwise deviation"));
  }

  // Long-time RK4 integration reaches the closed-form steady state.
  {
    double worst = 0.0;
    const int runs = std::min(draws, 20);
    for (int n = 0; n < runs; ++n) {
      const EngineParams p = random_engine_params(rng);
      const double horizon = 100.0 / spectral_gap(build_liouvillian(p));
      const DensityMatrix final_state =
          evolve_final(DensityMatrix::basis_state(0), p, horizon, default_time_step(p));
      worst = std::max(worst, trace_distance(final_state, steady_state_analytic(p).rho_ss));
    }
    report.checks.push_back(make_check("long_time_integration_convergence", worst, 1e-6,
                                       "trace distance at t = 100 / spectral gap"));
  }

  // Thermodynamics of the closed-form steady state.
  {
    double first_law = 0.0;
    double bound_excess = 0.0;
    double efficiency = 0.0;
    double saturation = 0.0;
    double second_law = 0.0;
    double current_forms = 0.0;
    for (int n = 0; n < draws; ++n) {
      const EngineParams p = random_engine_params(rng);
      const DensityMatrix rho_ss = steady_state_analytic(p).rho_ss;
      const ThermoReport t = options.thermo(p, rho_ss);
      const HeatCurrents pop = population_heat_currents(p, rho_ss);
      const HeatCurrents closed = steady_heat_currents(p);
      current_forms = std::max(
          {current_forms,
           std::abs(pop.hot - closed.hot) / (p.gamma_h * p.omega31() * (p.nbar_h + 1.0)),
           std::abs(pop.cold - closed.cold) / (p.gamma_c * p.omega21() * (p.nbar_c + 1.0))});
      const double scale = std::max(std::abs(t.qdot_h), p.epsilon * p.omega32());
      const double residual = std::abs(t.power_ss + t.qdot_h + t.qdot_c);
      first_law = std::max(first_law, scale > 0.0 ? residual / scale : residual);
      bound_excess = std::max(bound_excess, std::abs(t.power_ss) - t.bound);
      if (p.nbar_h != p.nbar_c && t.qdot_h != 0.0) {
        efficiency = std::max(efficiency,
                              std::abs(std::abs(t.power_ss / t.qdot_h) - p.omega32() / p.omega31()));
      }

      const EngineParams resonant = p.with_detuning(0.0);
      const ThermoReport r = options.thermo(resonant, steady_state_analytic(resonant).rho_ss);
      if (r.bound > 0.0) saturation = std::max(saturation, std::abs(1.0 - std::abs(r.power_ss) / r.bound));

      const EngineParams thermal = random_thermal_engine_params(rng);
      const ThermoReport s = options.thermo(thermal, steady_state_analytic(thermal).rho_ss);
      second_law = std::max(second_law, -s.entropy_production);
    }
    report.checks.push_back(make_check("heat_current_forms_agree", current_forms, 1e-12,
                                       "max |Q_population - Q_closed| / (gamma omega (nbar + 1))"));
    report.checks.push_back(make_check("first_law", first_law, 1e-12,
                                       "|P + Qh + Qc| / max(|Qh|, eps omega32)"));
    report.checks.push_back(make_check("second_law", second_law, 1e-12, "max(-sigma)"));
    report.checks.push_back(make_check("power_bound", std::max(0.0, bound_excess), 1e-12,
                                       "max(|P| - 16 pi eps omega32 S_max)"));
    report.checks.push_back(make_check("power_bound_saturation_at_resonance", saturation, 1e-10,
                                       "max |1 - |P|/bound| at Delta = 0"));
    report.checks.push_back(make_check("efficiency_identity", efficiency, 1e-12,
                                       "max ||P/Qh| - omega32/omega31|"));
  }

  // Phase-space quadrature.
  {
    const int nodes = options.quadrature_nodes;
    const Complex3x3 frame = coherent_state_frame_operator(nodes, nodes);
    const double completeness =
        max_abs(frame - (kPi * kPi / 6.0) * Complex3x3::Identity());
    report.checks.push_back(make_check("coherent_state_completeness", completeness, 1e-6,
                                       "max |F - (pi^2/6) I|"));

    double normalization = 0.0;
    double quad_vs_closed = 0.0;
    double sync_bound = 0.0;
    for (int n = 0; n < 5; ++n) {
      const DensityMatrix rho = random_density(rng);
      normalization = std::max(normalization, std::abs(husimi_normalization(rho, nodes, nodes) - 1.0));
      const double phi1 = uniform(rng, 0.0, 2.0 * kPi);
      const double phi2 = uniform(rng, 0.0, 2.0 * kPi);
      quad_vs_closed = std::max(quad_vs_closed, std::abs(sync_measure_quadrature(rho, phi1, phi2, nodes) -
                                                         sync_measure_closed(rho, phi1, phi2)));
      const SyncProfile profile = sync_max(rho);
      sync_bound = std::max(sync_bound, profile.s_max - profile.coherence_bound());
    }
    report.checks.push_back(make_check("husimi_normalization", normalization, 1e-6, "max |int Q dv - 1|"));
    report.checks.push_back(make_check("sync_quadrature_vs_closed_form", quad_vs_closed, 1e-10,
                                       "max |S_quad - S_closed|"));
    report.checks.push_back(make_check("sync_max_coherence_bound", std::max(0.0, sync_bound), 1e-15,
                                       "max(S_max - C_l1/16pi)"));
  }

  // Heat/power split depends on the frame; their sum does not.
  {
    const EngineParams p = random_engine_params(rng);
    const DensityMatrix rho = steady_state_analytic(p).rho_ss;
    const double reference = alicki_frame_diagnostics(rho, p, Complex3x3::Zero()).total;
    double spread = 0.0;
    for (int n = 0; n < 100; ++n) {
      const FrameDiagnostics d = alicki_frame_diagnostics(rho, p, random_hermitian(rng));
      spread = std::max(spread, std::abs(d.total - reference));
    }
    report.checks.push_back(make_check("frame_invariance_of_energy_flux", spread, 1e-12,
                                       "max |total(x) - total(0)| over 100 frames"));
  }
  return report;
}

}  // namespace masersync

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

#include <doctest.h>

#include <cmath>
#include <random>

#include "masersync/dynamics.hpp"
#include "masersync/verify.hpp"

using namespace masersync;

namespace {

EngineParams reference() { return EngineParams{}; }

// Lindblad generator applied entry by entry with plain matrix products.
Complex3x3 lindblad_direct(const Complex3x3& rho, const EngineParams& p) {
  const Complex I(0.0, 1.0);
  const Complex3x3 h = rotating_frame_hamiltonian(p);
  Complex3x3 out = -I * (h * rho - rho * h);
  auto dissipate = [&](const Complex3x3& a, double rate) {
    const Complex3x3 ad = a.adjoint();
    out += rate * (a * rho * ad - 0.5 * (ad * a * rho + rho * ad * a));
  };
  dissipate(sigma(0, 2), p.gamma_h * (p.nbar_h + 1.0));
  dissipate(sigma(2, 0), p.gamma_h * p.nbar_h);
  dissipate(sigma(0, 1), p.gamma_c * (p.nbar_c + 1.0));
  dissipate(sigma(1, 0), p.gamma_c * p.nbar_c);
  return out;
}

Complex3x3 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Complex3x3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

}  // namespace

TEST_CASE("vectorization stacks columns") {
  Complex3x3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(10 * i + j, 0);
  const Vector9c v = vectorize(m);
  CHECK(v(1) == Complex(10, 0));
  CHECK(v(3) == Complex(1, 0));
  CHECK(max_abs(devectorize(v) - m) == 0.0);
}

TEST_CASE("Liouvillian vanishes without drive, detuning or baths") {
  EngineParams p;
  p.epsilon = 0.0;
  p.gamma_h = p.gamma_c = 0.0;
  CHECK(build_liouvillian(p).matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Liouvillian matches the direct Lindblad form") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 50; ++n) {
    const EngineParams p = random_engine_params(rng);
    const SuperOperator L = build_liouvillian(p);
    const Complex3x3 x = random_matrix(rng);
    CHECK(max_abs(L.apply(x) - lindblad_direct(x, p)) < 1e-13);
  }
}

TEST_CASE("Liouvillian preserves trace") {
  std::mt19937_64 rng(12);
  Eigen::Matrix<Complex, 1, 9> id = vectorize(Complex3x3::Identity()).transpose();
  for (int n = 0; n < 100; ++n) {
    const SuperOperator L = build_liouvillian(random_engine_params(rng));
    CHECK((id * L.matrix).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("reference Liouvillian has one zero mode and is otherwise damped") {
  const Eigen::VectorXcd spectrum = liouvillian_spectrum(build_liouvillian(reference()));
  int zeros = 0;
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    if (std::abs(spectrum(k)) < 1e-12) {
      ++zeros;
    } else {
      CHECK(spectrum(k).real() < -1e-6);
    }
  }
  CHECK(zeros == 1);
  CHECK(spectral_gap(build_liouvillian(reference())) > 0.0);
}

TEST_CASE("lindblad_rhs") {
  const EngineParams p = reference();
  CHECK(max_abs(lindblad_rhs(steady_state_analytic(p).rho_ss, p)) <= 1e-12);

  EngineParams undriven = p;
  undriven.epsilon = 0.0;
  Complex3x3 d = Complex3x3::Zero();
  d(0, 0) = 0.2;
  d(1, 1) = 0.3;
  d(2, 2) = 0.5;
  const Complex3x3 rate = lindblad_rhs(validate_density(d), undriven);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(rate(i, j) == Complex(0.0, 0.0));

  std::mt19937_64 rng(13);
  for (int n = 0; n < 100; ++n) {
    const EngineParams q = random_engine_params(rng);
    const DensityMatrix rho = random_density(rng);
    CHECK(max_abs(lindblad_rhs(rho, q) - build_liouvillian(q).apply(rho.matrix())) <= 1e-13);
  }
}

TEST_CASE("analytic steady state: special cases") {
  EngineParams p = reference();
  p.nbar_c = p.nbar_h;
  CHECK(steady_state_analytic(p).rho_ss(1, 2) == Complex(0.0, 0.0));

  EngineParams q;
  q.epsilon = 0.0;
  q.nbar_h = q.nbar_c = 1.0;
  const DensityMatrix rho = steady_state_analytic(q).rho_ss;
  Complex3x3 expected = Complex3x3::Zero();
  expected(0, 0) = 0.5;
  expected(1, 1) = 0.25;
  expected(2, 2) = 0.25;
  CHECK(max_abs(rho.matrix() - expected) < 1e-15);
  CHECK(max_abs(steady_state_nullspace(q).matrix() - expected) < 1e-12);
}

TEST_CASE("analytic steady state matches the null-space oracle for the reference engine") {
  for (double delta : {0.0, 0.25, -0.4}) {
    const EngineParams p = reference().with_detuning(delta);
    const DensityMatrix a = steady_state_analytic(p).rho_ss;
    const DensityMatrix b = steady_state_nullspace(p);
    CHECK(max_abs(a.matrix() - b.matrix()) <= 1e-10);
    CHECK(trace_distance(a, b) <= 1e-10);
  }
}

TEST_CASE("rho23 agrees with i eps conj(G23) gc gh (nc - nh) / beta") {
  std::mt19937_64 rng(14);
  for (int n = 0; n < 200; ++n) {
    const EngineParams p = random_engine_params(rng);
    const double g = p.gamma_h, c = p.gamma_c, nh = p.nbar_h, nc = p.nbar_c, e = p.epsilon;
    const Complex g23(0.5 * (g * (nh + 1) + c * (nc + 1)), -p.detuning());
    const double beta = 2 * e * e * g23.real() * (c * (3 * nc + 1) + g * (3 * nh + 1)) +
                        std::norm(g23) * c * g * (nc * (3 * nh + 2) + 2 * nh + 1);
    const Complex expected = Complex(0, 1) * e * std::conj(g23) * c * g * (nc - nh) / beta;
    const Complex got = steady_state_analytic(p).rho_ss(1, 2);
    CHECK(std::abs(got - expected) <= 1e-14 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("null space: detailed balance and degenerate kernel") {
  EngineParams p;
  p.epsilon = 0.0;
  p.nbar_h = 2.0;
  p.nbar_c = 0.5;
  const DensityMatrix rho = steady_state_nullspace(p);
  CHECK(rho.matrix().isDiagonal(1e-12));
  CHECK(rho.population(2) / rho.population(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(rho.population(1) / rho.population(0) == doctest::Approx(0.5 / 1.5).epsilon(1e-10));

  EngineParams unitary;
  unitary.gamma_h = unitary.gamma_c = 0.0;
  try {
    steady_state_nullspace(unitary);
    FAIL("expected DegenerateKernel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateKernel);
  }
  try {
    steady_state_analytic(unitary);
    FAIL("expected DegenerateParameters");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateParameters);
  }
}

TEST_CASE("evolve: fixed point stays put") {
  const EngineParams p = reference().with_detuning(0.2);
  const DensityMatrix ss = steady_state_analytic(p).rho_ss;
  const Trajectory traj = evolve(ss, p, 200.0, default_time_step(p));
  for (const auto& s : traj.samples) CHECK(trace_distance(s.rho, ss) <= 1e-10);
  CHECK(traj.positivity_warnings == 0);
}

TEST_CASE("evolve: undriven coherences decay monotonically at Re Gamma") {
  EngineParams p = reference().with_detuning(0.3);
  p.epsilon = 0.0;
  Complex3x3 m = Complex3x3::Identity() / 3.0;
  m(0, 1) = m(0, 2) = m(1, 2) = Complex(0.1, 0.05);
  m(1, 0) = m(2, 0) = m(2, 1) = Complex(0.1, -0.05);
  const DensityMatrix rho0 = validate_density(m);
  const double dt = default_time_step(p);
  const Trajectory traj = evolve(rho0, p, 100.0, dt, 5);
  const DecayRates g = decay_rates(p);
  double prev[3] = {1, 1, 1};
  for (const auto& s : traj.samples) {
    const double c[3] = {std::abs(s.rho(0, 1)), std::abs(s.rho(0, 2)), std::abs(s.rho(1, 2))};
    for (int k = 0; k < 3; ++k) {
      CHECK(c[k] <= prev[k]);
      prev[k] = c[k];
    }
  }
  const auto& last = traj.samples.back();
  const double t = last.time;
  CHECK(std::abs(last.rho(0, 1)) == doctest::Approx(std::abs(m(0, 1)) * std::exp(-g.gamma12.real() * t)).epsilon(1e-4));
  CHECK(std::abs(last.rho(1, 2)) == doctest::Approx(std::abs(m(1, 2)) * std::exp(-g.gamma23.real() * t)).epsilon(1e-4));
}

TEST_CASE("evolve: ground state relaxes to the analytic steady state") {
  const EngineParams p = reference();
  const double t_final = 50.0 / p.gamma_h;
  const Trajectory traj = evolve(DensityMatrix::basis_state(0), p, t_final, default_time_step(p), 100);
  CHECK(traj.samples.back().time == doctest::Approx(t_final));
  CHECK(trace_distance(traj.samples.back().rho, steady_state_analytic(p).rho_ss) <= 1e-6);
  for (const auto& s : traj.samples) CHECK(std::abs(s.rho.matrix().trace().real() - 1.0) <= 1e-9);

  const DensityMatrix fast = evolve_final(DensityMatrix::basis_state(0), p, t_final, default_time_step(p));
  CHECK(trace_distance(fast, traj.samples.back().rho) <= 1e-10);
}

TEST_CASE("evolve: step outside the stability region is rejected") {
  const EngineParams p = reference();
  try {
    evolve(DensityMatrix::basis_state(0), p, 100.0, 50.0);
    FAIL("expected StepSize");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepSize);
  }
  CHECK_THROWS_AS(evolve(DensityMatrix::basis_state(0), p, -1.0, 0.1), Error);
  CHECK_THROWS_AS(evolve(DensityMatrix::basis_state(0), p, 1.0, 0.0), Error);
}

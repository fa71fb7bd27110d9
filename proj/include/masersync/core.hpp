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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace masersync {

using Complex = std::complex<double>;
using Complex3x3 = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

enum class ErrorKind {
  InvalidArgument,
  NotHermitian,
  TraceDeviation,
  NotPositive,
  DegenerateParameters,
  DegenerateKernel,
  StepSize,
  NotSteadyState,
  BoundViolation,
  Io,
  Config,
};

const char* error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Per-call tolerances for validate_density.
struct DensityTolerance {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double positivity = 1e-10;

  static DensityTolerance uniform(double tol) { return {tol, tol, tol}; }
};

// 3x3 Hermitian, unit-trace, positive semidefinite state over the energy
// basis {|1>,|2>,|3>} (ascending, |1> is the ground state). Indices are
// zero-based: rho(1, 2) is the 2-3 coherence.
class DensityMatrix {
 public:
  static DensityMatrix maximally_mixed();
  static DensityMatrix basis_state(int level);

  const Complex3x3& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double population(int i) const { return m_(i, i).real(); }

 private:
  explicit DensityMatrix(const Complex3x3& m) : m_(m) {}
  friend DensityMatrix validate_density(const Complex3x3&, const DensityTolerance&);

  Complex3x3 m_;
};

// Checks Hermiticity, then trace, then positivity (each its own ErrorKind).
// The accepted matrix is (m + m^dagger)/2 divided by its trace.
DensityMatrix validate_density(const Complex3x3& m, const DensityTolerance& tol = {});
DensityMatrix validate_density(const Complex3x3& m, double tol);

// Half the sum of singular values of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

double max_abs(const Complex3x3& m);
double hermiticity_defect(const Complex3x3& m);
double min_eigenvalue(const Complex3x3& hermitian);
bool all_finite(const Complex3x3& m);

// sigma(i, j) = |i><j| with zero-based levels.
Complex3x3 sigma(int i, int j);

// Physical constants of the driven three-level engine (hbar = k_B = 1).
struct EngineParams {
  double omega1 = 0.0;
  double omega2 = 100.0;
  double omega3 = 1100.0;
  double omega_d = 1000.0;
  double epsilon = 0.05;
  double gamma_h = 1e-2;
  double gamma_c = 1e-1;
  double nbar_h = 5.0;
  double nbar_c = 1e-3;

  double omega21() const noexcept { return omega2 - omega1; }
  double omega32() const noexcept { return omega3 - omega2; }
  double omega31() const noexcept { return omega3 - omega1; }
  double detuning() const noexcept { return omega32() - omega_d; }

  // Sets omega_d so that detuning() == delta.
  EngineParams with_detuning(double delta) const;

  // Throws Error(InvalidArgument) on ordering, sign or finiteness violations.
  void validate() const;
};

Complex3x3 bare_hamiltonian(const EngineParams& p);
// Delta sigma_33 + eps (sigma_23 + sigma_32).
Complex3x3 rotating_frame_hamiltonian(const EngineParams& p);

}  // namespace masersync

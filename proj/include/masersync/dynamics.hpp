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
#include <vector>

#include "masersync/core.hpp"

namespace masersync {

using Matrix9c = Eigen::Matrix<Complex, 9, 9>;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;

// Column stacking: vec(rho)[i + 3 j] = rho(i, j).
Vector9c vectorize(const Complex3x3& m);
Complex3x3 devectorize(const Vector9c& v);

// Generator of the rotating-frame master equation acting on vec(rho).
struct SuperOperator {
  Matrix9c matrix;

  Vector9c apply(const Vector9c& v) const { return matrix * v; }
  Complex3x3 apply(const Complex3x3& rho) const { return devectorize(matrix * vectorize(rho)); }
};

// Coherence damping rates; Gamma13 and Gamma23 carry -i*Delta.
struct DecayRates {
  Complex gamma12;
  Complex gamma13;
  Complex gamma23;
};

DecayRates decay_rates(const EngineParams& p);

// -i[H,.] maps to -i(I (x) H - H^T (x) I); D[O] maps to
// conj(O) (x) O - (I (x) O^dag O + (O^dag O)^T (x) I)/2.
SuperOperator build_liouvillian(const EngineParams& p);

// Element-wise equations of motion. Linear, so it accepts any 3x3 matrix.
Complex3x3 lindblad_rhs(const Complex3x3& rho, const EngineParams& p);
Complex3x3 lindblad_rhs(const DensityMatrix& rho, const EngineParams& p);

struct SteadyStateSolution {
  DensityMatrix rho_ss;
  Complex alpha1;
  Complex alpha2;
  Complex alpha3;
  Complex alpha4;
  double beta;
};

// Closed-form steady state rho_ii = alpha_i / beta, rho_23 = alpha_4 / beta.
// Throws DegenerateParameters when beta vanishes.
SteadyStateSolution steady_state_analytic(const EngineParams& p);

// Kernel of the generator from a full SVD. Throws DegenerateKernel when the
// second-smallest singular value is below 1e-8.
DensityMatrix steady_state_nullspace(const EngineParams& p);

// ||L vec(rho)||_2.
double steady_state_residual(const SuperOperator& L, const DensityMatrix& rho);

Eigen::VectorXcd liouvillian_spectrum(const SuperOperator& L);
// Smallest |Re lambda| among eigenvalues with |lambda| > 1e-10.
double spectral_gap(const SuperOperator& L);

// 0.1 / max(|Delta|, eps, gamma_h (nbar_h + 1), gamma_c (nbar_c + 1)).
double default_time_step(const EngineParams& p);

// Linear map of one classical fourth-order Runge-Kutta step of size dt.
Matrix9c rk4_step_matrix(const SuperOperator& L, double dt);

struct TrajectorySample {
  double time;
  DensityMatrix rho;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double min_eigenvalue = 0.0;          // over all stored samples
  std::size_t positivity_warnings = 0;  // stored samples with an eigenvalue < -1e-8
};

// Fixed-step RK4. t_final is split into ceil(t_final/dt) equal steps, so the
// step actually used never exceeds dt. Every store_every-th state is kept,
// plus the initial and final ones.
Trajectory evolve(const DensityMatrix& rho0, const EngineParams& p, double t_final, double dt,
                  std::size_t store_every = 1);

// Same RK4 iterate as evolve() at t_final, obtained by raising the step
// matrix to the number of steps. Used for very long horizons.
DensityMatrix evolve_final(const DensityMatrix& rho0, const EngineParams& p, double t_final,
                           double dt);

}  // namespace masersync

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

#include "masersync/core.hpp"

namespace masersync {

// Coordinates of an SU(3) coherent state: theta, xi in [0, pi/2],
// phi1, phi2 in [0, 2pi).
struct SU3Angles {
  double theta = 0.0;
  double xi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  void validate() const;
};

// (cos theta, e^{i phi1} cos xi sin theta, e^{i phi2} sin xi sin theta).
Vector3c su3_coherent_state(const SU3Angles& a);

// Husimi-Kano Q = (6/pi^2) <n|rho|n>.
double husimi_q(const DensityMatrix& rho, const SU3Angles& a);

// l1-norm of coherence: sum of |rho_ij| over i != j.
double l1_coherence(const DensityMatrix& rho);

// (1/8pi){Re[e^{i phi1} rho_12] + Re[e^{i phi2} rho_13] + Re[e^{i(phi2-phi1)} rho_23]}.
double sync_measure_closed(const DensityMatrix& rho, double phi1, double phi2);

// Integral of Q over theta and xi with the group weight
// cos(theta) sin^3(theta) cos(xi) sin(xi), minus 1/4pi^2. Gauss-Legendre
// product rule, `nodes` points per axis (nodes >= 8).
double sync_measure_quadrature(const DensityMatrix& rho, double phi1, double phi2, int nodes = 64);

// Integral of |n><n| over the full group measure. Gauss-Legendre on the
// polar axes, periodic trapezoid on the phases. Should equal (pi^2/6) I.
Complex3x3 coherent_state_frame_operator(int polar_nodes = 64, int phase_nodes = 64);

// Integral of Q over the full group measure. Should equal 1.
double husimi_normalization(const DensityMatrix& rho, int polar_nodes = 64, int phase_nodes = 64);

struct SyncProfile {
  double s_max = 0.0;
  double phi1 = 0.0;  // maximizer, wrapped into [0, 2pi)
  double phi2 = 0.0;
  Complex rho12;
  Complex rho13;
  Complex rho23;

  // S(phi1, phi2) of the profiled state.
  double operator()(double phi1, double phi2) const;
  // C_l1 / 16pi, the upper bound on s_max.
  double coherence_bound() const;
};

// Maximum of S over both phases. States with at most two nonzero coherences
// are solved exactly (rho_12 = rho_13 = 0 gives |rho_23|/8pi at
// phi1 = 0, phi2 = -arg rho_23). Otherwise a 360x360 grid seeds Newton
// refinement of every grid-local maximum.
SyncProfile sync_max(const DensityMatrix& rho);

}  // namespace masersync

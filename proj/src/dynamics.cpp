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

#include "masersync/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace masersync {
namespace {

constexpr double kTraceDriftLimit = 1e-6;
constexpr double kNegativeEigenvalueWarning = -1e-8;
constexpr double kKernelGap = 1e-8;

Matrix9c kron(const Complex3x3& a, const Complex3x3& b) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    }
  }
  return out;
}

Matrix9c dissipator(const Complex3x3& op, double rate) {
  const Complex3x3 id = Complex3x3::Identity();
  const Complex3x3 n = op.adjoint() * op;
  return rate * (kron(op.conjugate(), op) - 0.5 * (kron(id, n) + kron(n.transpose(), id)));
}

double rk4_gain(Complex z) {
  return std::abs(1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0);
}

std::uint64_t step_count(double t_final, double dt) {
  if (!(t_final > 0.0) || !(dt > 0.0) || !std::isfinite(t_final) || !std::isfinite(dt)) {
    throw Error(ErrorKind::InvalidArgument, "evolve: t_final and dt must be positive and finite");
  }
  const double n = std::ceil(t_final / dt * (1.0 - 1e-14));
  if (n > 1e18) throw Error(ErrorKind::StepSize, "evolve: too many steps");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

void check_stability(const SuperOperator& L, double h) {
  const Eigen::VectorXcd spectrum = liouvillian_spectrum(L);
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const double g = rk4_gain(h * spectrum(k));
    if (g > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "evolve: step " << h << " outside RK4 stability region (|R(h lambda)| = " << g << ")";
      throw Error(ErrorKind::StepSize, os.str());
    }
  }
}

void check_trace(const Complex3x3& rho, double t) {
  const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (!(drift <= kTraceDriftLimit)) {
    std::ostringstream os;
    os << "evolve: trace drift " << drift << " at t = " << t;
    throw Error(ErrorKind::StepSize, os.str());
  }
}

DensityMatrix accept_state(const Complex3x3& rho) {
  // Positivity is reported by the caller, not enforced here.
  DensityTolerance tol;
  tol.hermiticity = 1e-8;
  tol.trace = kTraceDriftLimit;
  tol.positivity = std::numeric_limits<double>::infinity();
  return validate_density(rho, tol);
}

}  // namespace

Vector9c vectorize(const Complex3x3& m) {
  Vector9c v;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) v(i + 3 * j) = m(i, j);
  }
  return v;
}

Complex3x3 devectorize(const Vector9c& v) {
  Complex3x3 m;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m(i, j) = v(i + 3 * j);
  }
  return m;
}

DecayRates decay_rates(const EngineParams& p) {
  const Complex i_delta(0.0, p.detuning());
  DecayRates r;
  r.gamma12 = 0.5 * (p.gamma_h * p.nbar_h + p.gamma_c * (2.0 * p.nbar_c + 1.0));
  r.gamma13 = 0.5 * (p.gamma_h * (2.0 * p.nbar_h + 1.0) + p.gamma_c * p.nbar_c) - i_delta;
  r.gamma23 = 0.5 * (p.gamma_h * (p.nbar_h + 1.0) + p.gamma_c * (p.nbar_c + 1.0)) - i_delta;
  return r;
}

SuperOperator build_liouvillian(const EngineParams& p) {
  p.validate();
  const Complex3x3 id = Complex3x3::Identity();
  const Complex3x3 h = rotating_frame_hamiltonian(p);
  const Complex minus_i(0.0, -1.0);

  SuperOperator L;
  L.matrix = minus_i * (kron(id, h) - kron(h.transpose(), id));
  L.matrix += dissipator(sigma(0, 2), p.gamma_h * (p.nbar_h + 1.0));
  L.matrix += dissipator(sigma(2, 0), p.gamma_h * p.nbar_h);
  L.matrix += dissipator(sigma(0, 1), p.gamma_c * (p.nbar_c + 1.0));
  L.matrix += dissipator(sigma(1, 0), p.gamma_c * p.nbar_c);
  return L;
}

Complex3x3 lindblad_rhs(const Complex3x3& rho, const EngineParams& p) {
  p.validate();
  const DecayRates g = decay_rates(p);
  const Complex ieps(0.0, p.epsilon);
  const double down_h = p.gamma_h * (p.nbar_h + 1.0);
  const double down_c = p.gamma_c * (p.nbar_c + 1.0);
  const double up_h = p.gamma_h * p.nbar_h;
  const double up_c = p.gamma_c * p.nbar_c;

  Complex3x3 d;
  d(0, 0) = down_h * rho(2, 2) + down_c * rho(1, 1) - (up_h + up_c) * rho(0, 0);
  d(1, 1) = ieps * (rho(1, 2) - rho(2, 1)) - down_c * rho(1, 1) + up_c * rho(0, 0);
  d(2, 2) = -ieps * (rho(1, 2) - rho(2, 1)) - down_h * rho(2, 2) + up_h * rho(0, 0);
  d(0, 1) = -g.gamma12 * rho(0, 1) + ieps * rho(0, 2);
  d(0, 2) = -g.gamma13 * rho(0, 2) + ieps * rho(0, 1);
  d(1, 2) = -g.gamma23 * rho(1, 2) - ieps * (rho(2, 2) - rho(1, 1));
  // Lower triangle: the same equations for the transposed elements, which
  // reduce to the conjugate equations when rho is Hermitian.
  d(1, 0) = -std::conj(g.gamma12) * rho(1, 0) - ieps * rho(2, 0);
  d(2, 0) = -std::conj(g.gamma13) * rho(2, 0) - ieps * rho(1, 0);
  d(2, 1) = -std::conj(g.gamma23) * rho(2, 1) + ieps * (rho(2, 2) - rho(1, 1));
  return d;
}

Complex3x3 lindblad_rhs(const DensityMatrix& rho, const EngineParams& p) {
  return lindblad_rhs(rho.matrix(), p);
}

SteadyStateSolution steady_state_analytic(const EngineParams& p) {
  p.validate();
  const double gh = p.gamma_h;
  const double gc = p.gamma_c;
  const double nh = p.nbar_h;
  const double nc = p.nbar_c;
  const double eps = p.epsilon;
  const Complex g23 = decay_rates(p).gamma23;
  const double re_g = g23.real();
  const double abs2_g = std::norm(g23);
  const double drive = 2.0 * eps * eps * re_g;
  const double baths = abs2_g * gc * gh;

  const double a1 = drive * (gc * (nc + 1.0) + gh * (nh + 1.0)) + baths * (nc + 1.0) * (nh + 1.0);
  const double a2 = drive * (gc * nc + gh * nh) + baths * nc * (nh + 1.0);
  const double a3 = drive * (gc * nc + gh * nh) + baths * (nc + 1.0) * nh;
  const Complex a4 = Complex(0.0, 1.0) * std::conj(g23) * gc * gh * eps * (nc - nh);
  const double beta = drive * (gc * (3.0 * nc + 1.0) + gh * (3.0 * nh + 1.0)) +
                      baths * (nc * (3.0 * nh + 2.0) + 2.0 * nh + 1.0);

  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::DegenerateParameters,
                "steady_state_analytic: beta vanishes, steady state is not unique");
  }

  Complex3x3 rho = Complex3x3::Zero();
  rho(0, 0) = a1 / beta;
  rho(1, 1) = a2 / beta;
  rho(2, 2) = a3 / beta;
  rho(1, 2) = a4 / beta;
  rho(2, 1) = std::conj(rho(1, 2));
  return SteadyStateSolution{validate_density(rho), a1, a2, a3, a4, beta};
}

DensityMatrix steady_state_nullspace(const EngineParams& p) {
  const SuperOperator L = build_liouvillian(p);
  Eigen::JacobiSVD<Matrix9c> svd(L.matrix, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(7) < kKernelGap) {
    std::ostringstream os;
    os << "steady_state_nullspace: kernel is not one-dimensional (sigma_8 = " << s(7) << ")";
    throw Error(ErrorKind::DegenerateKernel, os.str());
  }
  Complex3x3 rho = devectorize(svd.matrixV().col(8));
  rho /= rho.trace();
  DensityTolerance tol;
  tol.hermiticity = 1e-9;
  tol.trace = 1e-9;
  return validate_density(rho, tol);
}

double steady_state_residual(const SuperOperator& L, const DensityMatrix& rho) {
  return L.apply(vectorize(rho.matrix())).norm();
}

Eigen::VectorXcd liouvillian_spectrum(const SuperOperator& L) {
  Eigen::ComplexEigenSolver<Matrix9c> solver(L.matrix, false);
  return solver.eigenvalues();
}

double spectral_gap(const SuperOperator& L) {
  const Eigen::VectorXcd spectrum = liouvillian_spectrum(L);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    if (std::abs(spectrum(k)) > 1e-10) gap = std::min(gap, std::abs(spectrum(k).real()));
  }
  return gap;
}

double default_time_step(const EngineParams& p) {
  const double fastest = std::max({std::abs(p.detuning()), p.epsilon, p.gamma_h * (p.nbar_h + 1.0),
                                   p.gamma_c * (p.nbar_c + 1.0)});
  if (!(fastest > 0.0)) {
    throw Error(ErrorKind::DegenerateParameters, "default_time_step: all rates vanish");
  }
  return 0.1 / fastest;
}

Matrix9c rk4_step_matrix(const SuperOperator& L, double dt) {
  const Matrix9c a = dt * L.matrix;
  const Matrix9c id = Matrix9c::Identity();
  // I + a + a^2/2 + a^3/6 + a^4/24 in Horner form.
  return id + a * (id + a * (id + a * (id + a / 4.0) / 3.0) / 2.0);
}

Trajectory evolve(const DensityMatrix& rho0, const EngineParams& p, double t_final, double dt,
                  std::size_t store_every) {
  const std::uint64_t steps = step_count(t_final, dt);
  const double h = t_final / static_cast<double>(steps);
  const SuperOperator L = build_liouvillian(p);
  check_stability(L, h);
  if (store_every == 0) store_every = 1;

  Trajectory traj;
  traj.min_eigenvalue = min_eigenvalue(rho0.matrix());
  traj.samples.push_back({0.0, rho0});

  Vector9c v = vectorize(rho0.matrix());
  for (std::uint64_t n = 1; n <= steps; ++n) {
    const Vector9c k1 = L.apply(v);
    const Vector9c k2 = L.apply(Vector9c(v + 0.5 * h * k1));
    const Vector9c k3 = L.apply(Vector9c(v + 0.5 * h * k2));
    const Vector9c k4 = L.apply(Vector9c(v + h * k3));
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t = static_cast<double>(n) * h;
    const Complex3x3 rho = devectorize(v);
    check_trace(rho, t);
    if (n % store_every == 0 || n == steps) {
      DensityMatrix state = accept_state(rho);
      const double lambda = min_eigenvalue(state.matrix());
      traj.min_eigenvalue = std::min(traj.min_eigenvalue, lambda);
      if (lambda < kNegativeEigenvalueWarning) ++traj.positivity_warnings;
      traj.samples.push_back({t, std::move(state)});
    }
  }
  return traj;
}

DensityMatrix evolve_final(const DensityMatrix& rho0, const EngineParams& p, double t_final,
                           double dt) {
  std::uint64_t steps = step_count(t_final, dt);
  const double h = t_final / static_cast<double>(steps);
  const SuperOperator L = build_liouvillian(p);
  check_stability(L, h);

  Matrix9c base = rk4_step_matrix(L, h);
  Matrix9c power = Matrix9c::Identity();
  while (steps > 0) {
    if (steps & 1u) power = base * power;
    steps >>= 1u;
    if (steps > 0) base = base * base;
  }
  const Complex3x3 rho = devectorize(power * vectorize(rho0.matrix()));
  check_trace(rho, t_final);
  return accept_state(rho);
}

}  // namespace masersync

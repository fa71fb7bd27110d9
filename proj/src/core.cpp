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

#include "masersync/core.hpp"

#include <cmath>
#include <sstream>

namespace masersync {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::NotHermitian: return "not hermitian";
    case ErrorKind::TraceDeviation: return "trace deviation";
    case ErrorKind::NotPositive: return "not positive";
    case ErrorKind::DegenerateParameters: return "degenerate parameters";
    case ErrorKind::DegenerateKernel: return "degenerate kernel";
    case ErrorKind::StepSize: return "step size";
    case ErrorKind::NotSteadyState: return "not steady state";
    case ErrorKind::BoundViolation: return "bound violation";
    case ErrorKind::Io: return "i/o";
    case ErrorKind::Config: return "configuration";
  }
  return "unknown";
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Complex3x3::Identity() / 3.0);
}

DensityMatrix DensityMatrix::basis_state(int level) {
  if (level < 0 || level > 2) {
    throw Error(ErrorKind::InvalidArgument, "basis_state: level must be 0, 1 or 2");
  }
  return DensityMatrix(sigma(level, level));
}

double max_abs(const Complex3x3& m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Complex3x3& m) { return max_abs(m - m.adjoint()); }

double min_eigenvalue(const Complex3x3& hermitian) {
  Eigen::SelfAdjointEigenSolver<Complex3x3> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool all_finite(const Complex3x3& m) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

Complex3x3 sigma(int i, int j) {
  Complex3x3 s = Complex3x3::Zero();
  s(i, j) = 1.0;
  return s;
}

DensityMatrix validate_density(const Complex3x3& m, const DensityTolerance& tol) {
  if (!(tol.hermiticity > 0.0) || !(tol.trace > 0.0) || !(tol.positivity > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "validate_density: tolerances must be positive");
  }
  if (!all_finite(m)) {
    throw Error(ErrorKind::InvalidArgument, "validate_density: non-finite entry");
  }
  const double herm = hermiticity_defect(m);
  if (herm > tol.hermiticity) {
    std::ostringstream os;
    os << "validate_density: hermiticity defect " << herm << " exceeds " << tol.hermiticity;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  Complex3x3 h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "validate_density: trace " << tr << " deviates from 1 by more than " << tol.trace;
    throw Error(ErrorKind::TraceDeviation, os.str());
  }
  const double lambda_min = min_eigenvalue(h);
  if (lambda_min < -tol.positivity) {
    std::ostringstream os;
    os << "validate_density: eigenvalue " << lambda_min << " below -" << tol.positivity;
    throw Error(ErrorKind::NotPositive, os.str());
  }
  h /= tr;
  return DensityMatrix(h);
}

DensityMatrix validate_density(const Complex3x3& m, double tol) {
  return validate_density(m, DensityTolerance::uniform(tol));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Complex3x3 diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Complex3x3> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

EngineParams EngineParams::with_detuning(double delta) const {
  EngineParams q = *this;
  q.omega_d = omega32() - delta;
  return q;
}

void EngineParams::validate() const {
  const double fields[] = {omega1, omega2, omega3, omega_d, epsilon,
                           gamma_h, gamma_c, nbar_h, nbar_c};
  for (double f : fields) {
    if (!std::isfinite(f)) throw Error(ErrorKind::InvalidArgument, "EngineParams: non-finite field");
  }
  if (!(omega3 > omega2 && omega2 > omega1)) {
    throw Error(ErrorKind::InvalidArgument, "EngineParams: require omega3 > omega2 > omega1");
  }
  if (gamma_h < 0.0 || gamma_c < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "EngineParams: bath rates must be non-negative");
  }
  if (nbar_h < 0.0 || nbar_c < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "EngineParams: occupations must be non-negative");
  }
  if (epsilon < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "EngineParams: drive strength must be non-negative");
  }
}

Complex3x3 bare_hamiltonian(const EngineParams& p) {
  Complex3x3 h = Complex3x3::Zero();
  h(0, 0) = p.omega1;
  h(1, 1) = p.omega2;
  h(2, 2) = p.omega3;
  return h;
}

Complex3x3 rotating_frame_hamiltonian(const EngineParams& p) {
  return p.detuning() * sigma(2, 2) + p.epsilon * (sigma(1, 2) + sigma(2, 1));
}

}  // namespace masersync

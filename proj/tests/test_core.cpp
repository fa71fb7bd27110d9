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

#include "masersync/core.hpp"

using namespace masersync;

namespace {

Complex3x3 diag(double a, double b, double c) {
  Complex3x3 m = Complex3x3::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

ErrorKind kind_of(const Complex3x3& m, double tol) {
  try {
    validate_density(m, tol);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected validate_density to throw");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_density accepts mixed and pure states") {
  const Complex3x3 mixed = Complex3x3::Identity() / 3.0;
  const DensityMatrix rho = validate_density(mixed);
  CHECK(max_abs(rho.matrix() - mixed) == 0.0);

  const DensityMatrix pure = validate_density(diag(1, 0, 0));
  CHECK(pure.population(0) == 1.0);
  CHECK(max_abs(DensityMatrix::basis_state(0).matrix() - pure.matrix()) == 0.0);
  CHECK(max_abs(DensityMatrix::maximally_mixed().matrix() - mixed) < 1e-16);
}

TEST_CASE("validate_density rejects each defect with its own kind") {
  CHECK(kind_of(diag(1.5, -0.5, 0), 1e-10) == ErrorKind::NotPositive);
  CHECK(kind_of(diag(0.5, 0.2, 0.2), 1e-10) == ErrorKind::TraceDeviation);

  Complex3x3 skew = diag(0.5, 0.25, 0.25);
  skew(0, 1) = Complex(0.1, 0.0);
  skew(1, 0) = Complex(0.1, 1e-6);
  CHECK(kind_of(skew, 1e-10) == ErrorKind::NotHermitian);

  Complex3x3 bad = diag(1, 0, 0);
  bad(2, 2) = std::nan("");
  CHECK(kind_of(bad, 1e-10) == ErrorKind::InvalidArgument);
}

TEST_CASE("validate_density tolerances are per call") {
  Complex3x3 m = diag(0.5, 0.25, 0.25 + 1e-9);
  CHECK(kind_of(m, 1e-12) == ErrorKind::TraceDeviation);
  const DensityMatrix rho = validate_density(m, 1e-8);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-15);
}

TEST_CASE("trace distance") {
  const DensityMatrix a = DensityMatrix::basis_state(0);
  const DensityMatrix b = DensityMatrix::basis_state(1);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed();
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(mixed, a) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("engine parameters") {
  EngineParams p;
  CHECK(p.omega21() == 100.0);
  CHECK(p.omega32() == 1000.0);
  CHECK(p.omega31() == 1100.0);
  CHECK(p.detuning() == 0.0);
  const EngineParams q = p.with_detuning(0.25);
  CHECK(q.detuning() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(q.omega32() == p.omega32());

  p.gamma_h = -1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = EngineParams{};
  p.nbar_c = std::nan("");
  CHECK_THROWS_AS(p.validate(), Error);
  p = EngineParams{};
  p.omega2 = p.omega3;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("rotating-frame Hamiltonian") {
  EngineParams p = EngineParams{}.with_detuning(0.3);
  const Complex3x3 h = rotating_frame_hamiltonian(p);
  CHECK(hermiticity_defect(h) == 0.0);
  CHECK(h(2, 2).real() == doctest::Approx(0.3));
  CHECK(h(1, 2) == Complex(p.epsilon, 0.0));
  CHECK(h(0, 0) == Complex(0.0, 0.0));
  CHECK(std::abs(h(1, 1)) == 0.0);
}

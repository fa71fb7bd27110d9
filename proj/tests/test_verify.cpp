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

#include <json.hpp>

#include "masersync/verify.hpp"

using namespace masersync;

namespace {

const CheckResult& find(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  FAIL("missing check " << name);
  static CheckResult none;
  return none;
}

}  // namespace

TEST_CASE("default verification passes") {
  const VerifyReport r = verify_suite();
  for (const auto& c : r.checks) {
    INFO(c.name << " measured " << c.measured);
    CHECK(c.passed);
  }
  CHECK(r.passed());
  CHECK(r.checks.size() >= 14);
}

TEST_CASE("a sign flip in the power is caught by the first law") {
  VerifyOptions opt;
  opt.draws = 20;
  opt.quadrature_nodes = 16;
  opt.thermo = [](const EngineParams& p, const DensityMatrix& rho) {
    ThermoReport t = thermo_report(p, rho);
    t.power_ss = -t.power_ss;
    return t;
  };
  const VerifyReport r = verify_suite(opt);
  CHECK_FALSE(find(r, "first_law").passed);
  CHECK_FALSE(r.passed());
  CHECK(find(r, "steady_state_closed_form_vs_nullspace").passed);
}

TEST_CASE("seeded runs are reproducible") {
  VerifyOptions opt;
  opt.seed = 99;
  opt.draws = 15;
  opt.quadrature_nodes = 16;
  const VerifyReport a = verify_suite(opt);
  const VerifyReport b = verify_suite(opt);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_text() == b.to_text());

  opt.seed = 100;
  CHECK(verify_suite(opt).to_json() != a.to_json());

  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j.at("seed") == 99);
  CHECK(j.at("checks").size() == a.checks.size());
}

TEST_CASE("random draws respect their ranges") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const EngineParams p = random_engine_params(rng);
    CHECK(p.gamma_h >= 1e-4);
    CHECK(p.gamma_h <= 1.0);
    CHECK(p.gamma_c >= 1e-4);
    CHECK(p.nbar_h <= 10.0);
    CHECK(p.epsilon <= 0.2);
    CHECK(std::abs(p.detuning()) <= 1.0);
    const DensityMatrix rho = random_density(rng);
    CHECK(min_eigenvalue(rho.matrix()) >= -1e-12);
  }
}

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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "masersync/dynamics.hpp"
#include "masersync/sweep.hpp"
#include "masersync/thermo.hpp"

using namespace masersync;

namespace {

std::string csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("axis values hit both ends exactly") {
  const Axis a{-0.5, 0.5, 101};
  CHECK(a.value(0) == -0.5);
  CHECK(a.value(50) == 0.0);
  CHECK(a.value(100) == 0.5);
  CHECK(Axis{0.25, 0.25, 1}.value(0) == 0.25);
}

TEST_CASE("spec validation") {
  SweepSpec s = default_sweep_spec(SweepMode::Arnold);
  CHECK_NOTHROW(s.validate());
  CHECK(s.cell_count() == 101 * 51);

  s.epsilon = {};
  CHECK_THROWS_AS(s.validate(), Error);

  SweepSpec t = default_sweep_spec(SweepMode::Temperature);
  CHECK_NOTHROW(t.validate());
  t.nbar_c = {0.0, 1.0, 3};
  CHECK_THROWS_AS(t.validate(), Error);
  t.tcth = {};
  CHECK_NOTHROW(t.validate());
  t.epsilon = {0.0, 0.1, 3};
  CHECK_THROWS_AS(t.validate(), Error);

  SweepSpec bad = default_sweep_spec(SweepMode::Arnold);
  bad.delta = {0.5, -0.5, 11};
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.delta = {0.0, 1.0, 1};
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = default_sweep_spec(SweepMode::Arnold);
  bad.delta.points = 100000;
  bad.epsilon.points = 1000;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("JSON config round trip and strictness") {
  const SweepSpec s = default_sweep_spec(SweepMode::Temperature);
  const SweepSpec back = sweep_spec_from_json(sweep_spec_to_json(s));
  CHECK(back.mode == SweepMode::Temperature);
  CHECK(back.tcth.points == 201);
  CHECK(back.delta.max == 0.25);
  CHECK(back.output == s.output);
  CHECK(back.base.nbar_h == s.base.nbar_h);

  CHECK_THROWS_AS(sweep_spec_from_json("{\"mode\": \"arnold\", \"colour\": 1}"), Error);
  CHECK_THROWS_AS(sweep_spec_from_json("{\"mode\": \"sideways\"}"), Error);
  CHECK_THROWS_AS(sweep_spec_from_json("{\"params\": {\"gamma_h\": \"fast\"}}"), Error);
  CHECK_THROWS_AS(sweep_spec_from_json("not json"), Error);
  try {
    sweep_spec_from_json("{\"axes\": {\"delta\": {\"min\": 0, \"max\": 1, \"points\": 3, \"step\": 2}}}");
    FAIL("expected Config");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }

  const EngineParams p = engine_params_from_json("{\"params\": {\"nbar_c\": 0.5, \"delta\": 0.2}}");
  CHECK(p.nbar_c == 0.5);
  CHECK(p.detuning() == doctest::Approx(0.2));
}

TEST_CASE("3x3 Arnold grid") {
  SweepSpec s = default_sweep_spec(SweepMode::Arnold);
  s.delta = {-0.25, 0.25, 3};
  s.epsilon = {0.01, 0.1, 3};
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 9);
  CHECK(*rows[0].delta == -0.25);
  CHECK(*rows[1].epsilon == doctest::Approx(0.055));

  // For the two weaker drives the tongue is centred; at eps = 0.1 the
  // response is split and Delta = +-0.25 beat resonance (|rho23| depends on
  // Delta only through |Gamma23|^2).
  s.epsilon = {0.01, 0.05, 2};
  const auto weak = run_sweep(s);
  for (int k = 0; k < 2; ++k) {
    CHECK(weak[2 + k].s_max > weak[k].s_max);
    CHECK(weak[2 + k].s_max > weak[4 + k].s_max);
  }
  s.epsilon = {0.1, 0.1, 1};
  const auto strong = run_sweep(s);
  CHECK(strong[1].s_max < strong[0].s_max);
  CHECK(strong[0].s_max == doctest::Approx(strong[2].s_max).epsilon(1e-12));
}

TEST_CASE("single-cell sweep equals direct library calls") {
  SweepSpec s = default_sweep_spec(SweepMode::Arnold);
  s.delta = {0.1, 0.1, 1};
  s.epsilon = {0.03, 0.03, 1};
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 1);
  EngineParams p = s.base.with_detuning(0.1);
  p.epsilon = 0.03;
  const ThermoReport r = thermo_report(p, steady_state_analytic(p).rho_ss);
  CHECK(rows[0].power_ss == r.power_ss);
  CHECK(rows[0].bound == r.bound);
  CHECK(rows[0].s_max == r.s_max);
  CHECK(rows[0].qdot_h == r.qdot_h);
  CHECK(rows[0].entropy == r.entropy_production);
  CHECK(rows[0].regime == "engine");
  CHECK(!rows[0].tcth.has_value());
}

TEST_CASE("temperature sweep vanishes at the crossing") {
  SweepSpec s = default_sweep_spec(SweepMode::Temperature);
  s.delta = {0.25, 0.25, 1};
  s.tcth = {};
  s.nbar_c = {0.0, 10.0, 101};
  const auto rows = run_sweep(s);
  std::size_t argmin = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].s_max < rows[argmin].s_max) argmin = k;
  }
  CHECK(argmin == 50);
  CHECK(rows[50].s_max == 0.0);
  CHECK(rows[50].abs_power == 0.0);
  CHECK(rows[50].regime == "degenerate");
  CHECK(*rows[50].tcth == doctest::Approx(100.0 / 1100.0).epsilon(1e-12));
  CHECK(rows[49].regime == "engine");
  CHECK(rows[51].regime == "fridge");
}

TEST_CASE("tcth column reproduces the requested ratio") {
  SweepSpec s = default_sweep_spec(SweepMode::Temperature);
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 402);
  for (int k = 1; k < 201; ++k) CHECK(*rows[k].tcth == doctest::Approx(s.tcth.value(k)).epsilon(1e-12));
  CHECK(*rows[0].tcth == 0.0);
  for (const auto& r : rows) CHECK(r.abs_power <= r.bound + 1e-12);
}

TEST_CASE("CSV layout") {
  const std::string empty = csv({});
  CHECK(empty == std::string(kCsvHeader) + "\n");

  ResultRow r;
  r.delta = 0.5;
  r.s_max = 1.0 / 3.0;
  r.carnot = std::nan("");
  r.entropy = INFINITY;
  r.regime = "engine";
  const std::string one = csv({r});
  CHECK(count_lines(one) == 2);
  const std::string line = one.substr(one.find('\n') + 1);
  CHECK(line ==
        "5.00000000000e-01,,,3.33333333333e-01,0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,"
        "0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,nan,inf,engine\n");
  CHECK(one.find('\r') == std::string::npos);

  ResultRow violating = r;
  violating.abs_power = violating.power_ss = 1.0;
  violating.bound = 0.5;
  CHECK_THROWS_AS(csv({violating}), Error);
}

TEST_CASE("CSV output is byte-identical across runs and thread counts") {
  const auto dir = std::filesystem::temp_directory_path() / "masersync_sweep_test";
  std::filesystem::create_directories(dir);
  SweepSpec s = default_sweep_spec(SweepMode::Arnold);
  s.threads = 1;
  write_csv(run_sweep(s), (dir / "a.csv").string());
  s.threads = 7;
  write_csv(run_sweep(s), (dir / "b.csv").string());
  const std::string a = slurp(dir / "a.csv");
  CHECK(count_lines(a) == 1 + 101 * 51);
  CHECK(a == slurp(dir / "b.csv"));
  std::filesystem::remove_all(dir);

  try {
    write_csv(std::vector<ResultRow>{}, "/nonexistent-dir/x.csv");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "abclab/runner.hpp"
#include "abclab/scenario.hpp"
#include "abclab/verify.hpp"

using namespace abclab;
namespace fs = std::filesystem;

namespace {
scenario::Scenario load(const std::string& name) {
  return scenario::load_scenario(fs::path(ABCLAB_SOURCE_DIR) / "scenarios" / name);
}

const Check& find_check(const RunReport& r, const std::string& name) {
  const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const Check& c) { return c.name == name; });
  REQUIRE(it != r.checks.end());
  return *it;
}

double cell(const RunReport& r, std::size_t row, const std::string& column) {
  const auto col = std::find(r.columns.begin(), r.columns.end(), column) - r.columns.begin();
  return std::get<double>(r.rows.at(row).at(col));
}
}  // namespace

TEST_CASE("unit ab-solenoid scenario") {
  const auto r = run_scenario(load("ab_solenoid_unit.yaml"));
  REQUIRE(r.rows.size() == 1);
  CHECK(cell(r, 0, "flux") == Catch::Approx(4 * std::numbers::pi));
  CHECK(cell(r, 0, "phase_local_rad") == Catch::Approx(4 * std::numbers::pi));
  CHECK(find_check(r, "factor_four_identity").pass);
  CHECK(r.failed_checks() == 0);
}

TEST_CASE("sweep through pi lands on detector B") {
  const auto r = run_scenario(load("ab_solenoid_sweep.yaml"), {.use_sweep = true});
  REQUIRE(r.rows.size() == 3);
  CHECK(std::abs(cell(r, 1, "p_b") - 1.0) <= 1e-12);
  CHECK(find_check(r, "pi_phase_exit_B").pass);
  CHECK(r.columns.at(1) == "v_cm_per_s");
}

TEST_CASE("sweep results do not depend on worker count") {
  const auto s = load("ac_phase.yaml");
  const auto one = run_scenario(s, {.use_sweep = true, .max_workers = 1});
  const auto four = run_scenario(s, {.use_sweep = true, .max_workers = 4});
  CHECK(one == four);
  CHECK(to_csv(one) == to_csv(four));
}

TEST_CASE("bounce scenario reproduces the paradox and its resolution") {
  const auto r = run_scenario(load("ac_bounce.yaml"));
  CHECK(find_check(r, "energy_conserved(full)").pass);
  CHECK(find_check(r, "no_classical_lag(full)").pass);
  CHECK(find_check(r, "energy_grows(naive)").pass);
  CHECK(find_check(r, "work_integral(naive)").pass);
}

TEST_CASE("field-free scenario") {
  const auto r = run_scenario(load("field_free.yaml"));
  CHECK(find_check(r, "field_free_three_charge").pass);
  CHECK(find_check(r, "potential_at_electron").pass);
}

TEST_CASE("a failing sweep point is reported without hiding the others") {
  auto s = load("ab_solenoid_sweep.yaml");
  s.sweep->param = "M_g";
  s.sweep->from = -1.0;
  s.sweep->to = 3.0;
  const auto r = run_scenario(s, {.use_sweep = true});
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].sweep_index == 0);
  CHECK(r.rows.size() == 2);
}

TEST_CASE("verify suite is deterministic and passes") {
  const auto a = run_verify_suite(42, 1);
  const auto b = run_verify_suite(42, 3);
  CHECK(a == b);
  CHECK(a.failed_checks() == 0);
  const auto it = std::find_if(a.checks.begin(), a.checks.end(),
                               [](const Check& c) { return c.name == "factor_four_identity"; });
  REQUIRE(it != a.checks.end());
  CHECK(run_verify_suite(7, 2).failed_checks() == 0);
}

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "abclab/boyer.hpp"
#include "abclab/errors.hpp"
#include "oracles.hpp"

using namespace abclab;
using namespace abclab::boyer;
constexpr double pi = std::numbers::pi;

namespace {
const PhysicalConstants unity = make_constants(UnitSystem::ScaledUnity);

Vec3 off_axis(oracle::Rng& rng) {
  const double rho = rng.uniform(0.3, 5.0), phi = rng.uniform(0.0, 2 * pi);
  return {rho * std::cos(phi), rho * std::sin(phi), rng.uniform(-1, 1)};
}
}  // namespace

TEST_CASE("line field is radial with 2 lambda / rho magnitude") {
  LineCharge lc;
  lc.lambda_c = 1.5;
  const Vec3 e = line_field(lc, {3.0, 4.0, 7.0});
  CHECK(e.x == Catch::Approx(2 * 1.5 * 3.0 / 25.0));
  CHECK(e.y == Catch::Approx(2 * 1.5 * 4.0 / 25.0));
  CHECK(e.z == 0.0);
  CHECK_THROWS_AS(line_field(lc, {0.0, 0.0, 1.0}), SingularityError);
}

TEST_CASE("force equals hidden-momentum rate off the axis") {
  oracle::Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    LineCharge lc;
    lc.lambda_c = rng.uniform(-3, 3);
    const Vec3 mu{0, 0, rng.uniform(-3, 3)};
    const Vec3 pos = off_axis(rng);
    const Vec3 vel{rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0};
    const Vec3 f = boyer_force(lc, pos, vel, mu, unity);
    const Vec3 r = hidden_momentum_rate(lc, pos, vel, mu, unity);
    CHECK(norm(f - r) <= 1e-10 * std::max(norm(f), 1e-300));
  }
}

TEST_CASE("analytic force matches finite differences of the field") {
  oracle::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    LineCharge lc;
    lc.lambda_c = rng.uniform(0.5, 2);
    const Vec3 mu{0, 0, 1.0};
    const Vec3 pos = off_axis(rng);
    const Vec3 vel{rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0};
    auto field = [&](const Vec3& p) { return oracle::line_field(lc.lambda_c, p); };
    const Vec3 fd = oracle::directional(oracle::jacobian_richardson(field, pos, 1e-3), cross(vel, mu));
    const Vec3 f = boyer_force(lc, pos, vel, mu, unity);
    CHECK(norm(f - fd) <= 1e-7 * norm(f));
    CHECK(norm(f - oracle::naive_force(lc.lambda_c, 1.0, 1.0, pos, vel)) <= 1e-13 * norm(f));
  }
}

TEST_CASE("at rest there is no force") {
  LineCharge lc;
  CHECK(norm(boyer_force(lc, {1, 1, 0}, {}, {0, 0, 1}, unity)) == 0.0);
  CHECK(norm(induced_dipole({}, {0, 0, 1}, unity)) == 0.0);
}

TEST_CASE("moment not parallel to the line is rejected") {
  LineCharge lc;
  const NeutronModel n{1.0, {1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(n.validate(lc), ValidationError);
}

TEST_CASE("full law keeps the speed; naive law does not") {
  LineCharge lc;
  const NeutronModel n{1.0, {0, 0, 1.0}};
  TrajectoryState full{0.0, {-10.0, 0.5, 0.0}, {1.0, 0.0, 0.0}};
  TrajectoryState naive = full;
  double drift_full = 0.0, drift_naive = 0.0;
  for (int i = 0; i < 5000; ++i) {
    full = step_trajectory(lc, n, full, 2e-3, Law::Full, unity);
    naive = step_trajectory(lc, n, naive, 2e-3, Law::NaiveBoyer, unity);
    drift_full = std::max(drift_full, std::abs(norm(full.vel) - 1.0));
    drift_naive = std::max(drift_naive, std::abs(norm(naive.vel) - 1.0));
  }
  CHECK(drift_full < 1e-8);
  CHECK(drift_naive > 1e-3);
  CHECK(full.t == Catch::Approx(10.0));
}

TEST_CASE("bounce simulation hits each mirror and reverses vx") {
  LineCharge lc;
  const NeutronModel n{1.0, {0, 0, 0.05}};
  const BounceConfig cfg{1.0, 3.0, 4, 1e-3, Law::Full};
  const auto series = simulate_bounce_experiment(lc, n, cfg, {0.0, {1.5, 1.0, 0.0}, {1.0, 0.0, 0.0}}, unity);
  REQUIRE(series.bounce_samples.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) {
    const auto& s = series.samples[series.bounce_samples[j]];
    CHECK(s.at_mirror);
    CHECK(std::abs(s.pos.x - (j % 2 == 0 ? 3.0 : 1.0)) < 1e-9);
    CHECK((j % 2 == 0 ? s.vel.x < 0 : s.vel.x > 0));
  }
  // Full law: speed is constant, so each crossing takes 2 time units.
  CHECK(series.samples[series.bounce_samples[1]].t == Catch::Approx(3.5).epsilon(1e-9));
}

TEST_CASE("naive bounce work matches the independent oracle") {
  LineCharge lc;
  const NeutronModel n{1.0, {0, 0, 0.05}};
  const BounceConfig cfg{1.0, 3.0, 10, 1e-3, Law::NaiveBoyer};
  const auto s = simulate_bounce_experiment(lc, n, cfg, {0.0, {1.5, 1.0, 0.0}, {1.0, 0.0, 0.0}}, unity);
  const double gain = s.samples.back().kinetic_energy - s.samples.front().kinetic_energy;
  CHECK(gain > 0.0);
  CHECK(std::abs(gain / oracle::naive_work(s, 1.0, 0.05, 1.0, 1.0, 2.5e-4) - 1.0) <= 1e-6);
}

TEST_CASE("bounce start outside the mirrors is rejected") {
  LineCharge lc;
  const NeutronModel n{1.0, {0, 0, 1}};
  CHECK_THROWS_AS(simulate_bounce_experiment(lc, n, {}, {0.0, {5.0, 1.0, 0.0}, {1, 0, 0}}, unity),
                  ValidationError);
}

TEST_CASE("AC phase is topological") {
  LineCharge lc;
  lc.lambda_c = 0.8;
  const Vec3 mu{0, 0, 1.2};
  const double expected = ac_phase_expected(lc, mu, 1, unity);
  CHECK(expected == Catch::Approx(4 * pi * 0.96));
  for (double r : {0.2, 1.0, 10.0}) {
    CHECK(std::abs(ac_phase(lc, mu, CircleLoop{{0.05, 0.0, 0.0}, r}, unity) / expected - 1.0) <= 1e-9);
  }
  const PolylineLoop tri{{{-1, -1, 0}, {3, -1, 0}, {0, 4, 0}, {-1, -1, 0}}};
  CHECK(std::abs(ac_phase(lc, mu, tri, unity) / expected - 1.0) <= 1e-9);
  // Clockwise traversal flips the sign; a loop that misses the line gives zero.
  const PolylineLoop cw{{{-1, -1, 0}, {0, 4, 0}, {3, -1, 0}, {-1, -1, 0}}};
  CHECK(std::abs(ac_phase(lc, mu, cw, unity) / expected + 1.0) <= 1e-9);
  CHECK(std::abs(ac_phase(lc, mu, CircleLoop{{5, 5, 0}, 1.0}, unity)) <= 1e-10);
}

TEST_CASE("AC loop through the line or left open is rejected") {
  LineCharge lc;
  const Vec3 mu{0, 0, 1};
  CHECK_THROWS_AS(ac_phase(lc, mu, CircleLoop{{1, 0, 0}, 1.0}, unity), SingularityError);
  CHECK_THROWS_AS(ac_phase(lc, mu, PolylineLoop{{{1, 1, 0}, {2, 1, 0}, {2, 2, 0}, {1, 2, 0}}}, unity), DomainError);
  CHECK_THROWS_AS(ac_phase(lc, mu, PolylineLoop{{{-1, 0, 0}, {1, 0, 0}, {1, 1, 0}, {-1, 0, 0}}}, unity),
                  SingularityError);
}

#include <catch_amalgamated.hpp>

#include <cmath>

#include "abclab/errors.hpp"
#include "abclab/field_free.hpp"
#include "abclab/units.hpp"
#include "oracles.hpp"

using namespace abclab;
using namespace abclab::field_free;

TEST_CASE("three-charge configuration is field free with potential 8e/d at the electron") {
  const double e = make_constants(UnitSystem::GaussianCgs).e();
  for (double d : {1e-6, 1e-2, 1.0, 1e4}) {
    const auto cfg = make_three_charge(d, e);
    for (std::size_t i = 0; i < 3; ++i) CHECK(norm(field_at(cfg, i)) < 1e-12 * e / (d * d));
    CHECK(std::abs(potential_at(cfg, 0) / (8 * e / d) - 1.0) <= 1e-14);
    CHECK(potential_at(cfg, 0) != 0.0);
    for (const auto& entry : verify_field_free(cfg, 1e-12)) CHECK(entry.pass);
  }
}

TEST_CASE("perturbing one charge breaks the cancellation") {
  auto cfg = make_three_charge(1.0, 1.0);
  cfg.charges[1].pos.x *= 1.01;
  const auto entries = verify_field_free(cfg, 1e-12);
  CHECK_FALSE(entries[0].pass);
}

TEST_CASE("coulomb field of a pair") {
  const ChargeConfiguration cfg{{{2.0, {0, 0, 0}}, {1.0, {0, 3, 4}}}};
  const Vec3 e = field_at(cfg, 1);
  CHECK(e.y == Catch::Approx(2.0 / 25.0 * 3.0 / 5.0));
  CHECK(e.z == Catch::Approx(2.0 / 25.0 * 4.0 / 5.0));
  CHECK(potential_at(cfg, 1) == Catch::Approx(0.4));
}

TEST_CASE("fields rotate and translate with the configuration") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    ChargeConfiguration cfg;
    for (int j = 0; j < 4; ++j) {
      cfg.charges.push_back({rng.uniform(-2, 2), {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}});
    }
    const double a = rng.uniform(0, 6.28);
    const Vec3 shift{rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9)};
    auto rot = [&](const Vec3& v) {
      return Vec3{std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y, v.z};
    };
    auto moved = cfg;
    for (auto& q : moved.charges) q.pos = rot(q.pos) + shift;
    for (std::size_t j = 0; j < 4; ++j) {
      const Vec3 expect = rot(field_at(cfg, j));
      CHECK(norm(field_at(moved, j) - expect) <= 1e-10 * (1.0 + norm(expect)));
    }
  }
}

TEST_CASE("pairwise forces cancel in total") {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    ChargeConfiguration cfg;
    for (int j = 0; j < 5; ++j) {
      cfg.charges.push_back({rng.uniform(-2, 2), {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}});
    }
    Vec3 total{};
    double scale = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      const Vec3 f = cfg.charges[j].q * field_at(cfg, j);
      total += f;
      scale = std::max(scale, norm(f));
    }
    CHECK(norm(total) <= 1e-10 * std::max(scale, 1.0));
  }
}

TEST_CASE("coincident charges and bad indices are errors") {
  const ChargeConfiguration clash{{{1.0, {1, 1, 1}}, {1.0, {1, 1, 1}}}};
  CHECK_THROWS_AS(field_at(clash, 0), SingularityError);
  const auto cfg = make_three_charge(1.0, 1.0);
  CHECK_THROWS_AS(field_at(cfg, 7), DomainError);
  CHECK_THROWS_AS(make_three_charge(0.0, 1.0), DomainError);
}

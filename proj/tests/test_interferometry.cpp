#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "abclab/errors.hpp"
#include "abclab/interferometry.hpp"
#include "oracles.hpp"

using namespace abclab;
using namespace abclab::interferometry;
constexpr double pi = std::numbers::pi;

TEST_CASE("zero and pi phases route to single detectors") {
  const auto a = detector_probabilities(0.0);
  CHECK(std::abs(a.p_a - 1.0) <= 1e-12);
  CHECK(std::abs(a.p_b) <= 1e-12);
  const auto b = detector_probabilities(pi);
  CHECK(std::abs(b.p_b - 1.0) <= 1e-12);
  const auto half = detector_probabilities(pi / 2);
  CHECK(half.p_a == Catch::Approx(0.5));
}

TEST_CASE("zero visibility splits evenly at any phase") {
  for (double phi : {0.0, 1.0, pi, 5.0}) {
    const auto p = detector_probabilities(phi, 0.0);
    CHECK(p.p_a == 0.5);
    CHECK(p.p_b == 0.5);
  }
}

TEST_CASE("probabilities sum to one and are 2 pi periodic") {
  oracle::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double phi = rng.uniform(-30, 30), v = rng.unit();
    const auto p = detector_probabilities(phi, v);
    CHECK(std::abs(p.p_a + p.p_b - 1.0) <= 1e-15);
    CHECK(std::abs(detector_probabilities(phi + 2 * pi, v).p_a - p.p_a) <= 1e-12);
  }
}

TEST_CASE("visibility outside [0, 1] is a domain error") {
  CHECK_THROWS_AS(detector_probabilities(0.0, 1.5), DomainError);
  CHECK_THROWS_AS(detector_probabilities(0.0, -0.1), DomainError);
}

TEST_CASE("two-path amplitudes reproduce the closed form") {
  oracle::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const double phi = rng.uniform(-10, 10), v = rng.unit();
    const auto direct = detector_probabilities(phi, v);
    const auto amp = TwoPathState::balanced(phi).recombine(v);
    CHECK(std::abs(direct.p_a - amp.p_a) <= 1e-14);
  }
}

TEST_CASE("half-wavelength path shift is a pi phase") {
  CHECK(std::abs(phase_from_path_shift(0.25, 0.5) - pi) <= 1e-12);
  CHECK_THROWS_AS(phase_from_path_shift(1.0, 0.0), DomainError);
}

TEST_CASE("overlap of an undisplaced packet is one") {
  const GaussianPacket pk{0.4, 1.1, 0.8, 1.0};
  const auto o = packet_overlap(pk, 0.0, 0.0, 1.0);
  CHECK(o.real() == 1.0);
  CHECK(o.imag() == 0.0);
}

TEST_CASE("overlap closed form agrees with an independent quadrature") {
  oracle::Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    const GaussianPacket pk{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.log_uniform(0.2, 5.0), 1.0};
    const double dx = rng.uniform(-3, 3) * pk.sigma_x, dp = rng.uniform(-3, 3) / pk.sigma_x;
    const auto closed = packet_overlap(pk, dx, dp, 1.0);
    CHECK(std::abs(closed - oracle::packet_overlap(pk.x0, pk.p0, pk.sigma_x, dx, dp, 1.0)) <= 1e-8);
    CHECK(std::abs(closed - packet_overlap_numeric(pk, dx, dp, 1.0)) <= 1e-8);
  }
}

TEST_CASE("overlap magnitude decreases with displacement") {
  const GaussianPacket pk{0.0, 0.0, 1.0, 1.0};
  double prev = 1.0;
  for (int i = 1; i < 30; ++i) {
    const double m = std::abs(packet_overlap(pk, 0.2 * i, 0.1 * i, 1.0));
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("momentum-only kick gives the sigma_p visibility law") {
  const GaussianPacket pk{0.0, 0.0, 0.3, 1.0};
  const double sp = pk.sigma_p(1.0);
  for (double ratio : {0.5, 1.0, 2.0}) {
    const double v = visibility_from_overlap(packet_overlap(pk, 0.0, ratio * sp, 1.0));
    CHECK(v == Catch::Approx(std::exp(-ratio * ratio / 8.0)).epsilon(1e-14));
  }
}

TEST_CASE("invalid packets are rejected") {
  CHECK_THROWS_AS(packet_overlap({0.0, 0.0, 0.0, 1.0}, 0.1, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(visibility_from_overlap({1.5, 0.0}), ConsistencyError);
}

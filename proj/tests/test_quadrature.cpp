#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "abclab/errors.hpp"
#include "abclab/quadrature.hpp"

using namespace abclab::quadrature;
constexpr double pi = std::numbers::pi;

TEST_CASE("simpson integrates smooth functions to the requested tolerance") {
  const auto r = adaptive_simpson([](double x) { return std::cos(x); }, -pi / 2, pi / 2);
  CHECK(std::abs(r.value - 2.0) <= 1e-12 * 2.0);
  const auto e = adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 3.0, {.rel_tol = 1e-10});
  CHECK(std::abs(e.value / (std::exp(3.0) - 1.0) - 1.0) <= 1e-10);
  CHECK(e.evaluations > 0);
}

TEST_CASE("simpson is exact on cubics") {
  const auto r = adaptive_simpson([](double x) { return x * x * x - 2 * x + 1; }, -1.0, 2.0);
  CHECK(r.value == Catch::Approx(3.75 - 3.0 + 3.0).epsilon(1e-14));
}

TEST_CASE("reversed limits flip the sign") {
  const auto f = [](double x) { return x * x; };
  CHECK(adaptive_simpson(f, 1.0, 0.0).value == Catch::Approx(-1.0 / 3.0).epsilon(1e-13));
  CHECK(gauss_legendre(f, 1.0, 0.0).value == Catch::Approx(-1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre handles oscillatory integrands") {
  const auto r = gauss_legendre([](double x) { return std::sin(20 * x) * std::sin(20 * x); }, 0.0, pi,
                                {.rel_tol = 1e-12});
  CHECK(std::abs(r.value - pi / 2) <= 1e-11);
}

TEST_CASE("non-convergence is reported, not hidden") {
  // Non-integrable singularity: the refinement cannot meet the tolerance.
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / std::abs(x - 0.3); }, 0.0, 1.0,
                                   {.rel_tol = 1e-12, .max_depth = 12}),
                  abclab::NumericalError);
}

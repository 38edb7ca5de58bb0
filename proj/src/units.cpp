#include "abclab/units.hpp"

#include <cmath>

#include "abclab/errors.hpp"

namespace abclab {

namespace {

// Exact values of the 2019 SI redefinition (CODATA 2018), converted to CGS.
constexpr double kSpeedOfLightCgs = 2.99792458e10;         // cm/s
constexpr double kPlanckCgs = 6.62607015e-27;              // erg*s
constexpr double kElementaryChargeSi = 1.602176634e-19;    // C
// 1 C = (c / 10 in cm/s) statC, i.e. 2.99792458e9 statC.
constexpr double kStatCoulombPerCoulomb = kSpeedOfLightCgs / 10.0;

}  // namespace

UnitSystem parse_unit_system(std::string_view id) {
  if (id == "gaussian-cgs") return UnitSystem::GaussianCgs;
  if (id == "scaled-unity") return UnitSystem::ScaledUnity;
  throw ConfigurationError("unknown unit system '" + std::string(id) +
                           "' (expected gaussian-cgs or scaled-unity)");
}

std::string_view to_string(UnitSystem system) {
  switch (system) {
    case UnitSystem::GaussianCgs:
      return "gaussian-cgs";
    case UnitSystem::ScaledUnity:
      return "scaled-unity";
  }
  return "unknown";
}

PhysicalConstants PhysicalConstants::custom(double e, double c, double hbar) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(e) || !positive(c) || !positive(hbar)) {
    throw ConfigurationError("physical constants must be finite and strictly positive");
  }
  return PhysicalConstants(e, c, hbar);
}

PhysicalConstants make_constants(UnitSystem system) {
  switch (system) {
    case UnitSystem::GaussianCgs:
      // hbar is derived from the exact h so that h == 2*pi*hbar holds to rounding.
      return PhysicalConstants::custom(kElementaryChargeSi * kStatCoulombPerCoulomb,
                                       kSpeedOfLightCgs,
                                       kPlanckCgs / (2.0 * std::numbers::pi));
    case UnitSystem::ScaledUnity:
      return PhysicalConstants::custom(1.0, 1.0, 1.0);
  }
  throw ConfigurationError("unknown unit system");
}

PhysicalConstants make_constants(std::string_view system_id) {
  return make_constants(parse_unit_system(system_id));
}

}  // namespace abclab

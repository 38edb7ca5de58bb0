#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace abclab {

enum class UnitSystem { GaussianCgs, ScaledUnity };

/// Parses "gaussian-cgs" or "scaled-unity"; anything else is a ConfigurationError.
UnitSystem parse_unit_system(std::string_view id);
std::string_view to_string(UnitSystem system);

/// Electromagnetic constants in Gaussian units. All strictly positive, and
/// `h == 2*pi*hbar` by construction.
class PhysicalConstants {
 public:
  /// e in statC, c in cm/s, hbar in erg*s. Throws ConfigurationError unless all
  /// are finite and strictly positive.
  static PhysicalConstants custom(double e, double c, double hbar);

  double e() const noexcept { return e_; }
  double c() const noexcept { return c_; }
  double hbar() const noexcept { return hbar_; }
  double h() const noexcept { return h_; }

  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;

 private:
  PhysicalConstants(double e, double c, double hbar)
      : e_(e), c_(c), hbar_(hbar), h_(2.0 * std::numbers::pi * hbar) {}

  double e_;
  double c_;
  double hbar_;
  double h_;
};

PhysicalConstants make_constants(UnitSystem system);
PhysicalConstants make_constants(std::string_view system_id);

}  // namespace abclab

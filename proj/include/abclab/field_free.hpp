#pragma once

#include <cstddef>
#include <vector>

#include "abclab/vec3.hpp"

/// Static point-charge configurations in which every particle sits at a zero
/// of the field produced by the others, while the potentials stay nonzero.
namespace abclab::field_free {

struct PointCharge {
  double q{0.0};  ///< statC, signed
  Vec3 pos{};     ///< cm
};

struct ChargeConfiguration {
  std::vector<PointCharge> charges;

  /// Finite charges and positions; pairwise separation > 1e-12 cm.
  void validate() const;
};

/// Coulomb field at charge `target` from all others (Gaussian units).
/// SingularityError if another charge coincides with it.
Vec3 field_at(const ChargeConfiguration& cfg, std::size_t target);

/// Sum of q_j / |r_i - r_j| over the other charges, statvolt.
double potential_at(const ChargeConfiguration& cfg, std::size_t target);

/// Electron (-e) at the origin flanked by +4e at +-d along x. Throws DomainError
/// unless d and e are positive.
ChargeConfiguration make_three_charge(double d, double e);

struct FieldFreeEntry {
  std::size_t index{0};
  double field_magnitude{0.0};
  double scale{0.0};  ///< natural field scale: max over pairs of |q| / separation^2
  bool pass{false};
};

/// Pass when |E_i| < tol * scale. A lone charge (no sources) passes trivially.
std::vector<FieldFreeEntry> verify_field_free(const ChargeConfiguration& cfg, double tol);

}  // namespace abclab::field_free

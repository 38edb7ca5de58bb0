#pragma once

#include <array>
#include <optional>
#include <string>

#include "abclab/units.hpp"

/// Solvable quantum-solenoid model of the magnetic AB effect.
///
/// The solenoid is two coaxial cylinders (radius r, length L, mass M) carrying
/// surface charges +Q and -Q and counter-rotating with surface speed v. An
/// electron in superposition circles them at radius R with speed u. In each
/// branch the electron's own flux kicks both cylinders; the resulting
/// displacements of the cylinder wave packets, measured in de Broglie
/// wavelengths, add up to exactly the AB phase.
namespace abclab::solenoid {

struct SolenoidParams {
  double r{1.0};  ///< cylinder radius, cm
  double L{1.0};  ///< cylinder length, cm
  double M{1.0};  ///< cylinder mass, g
  double Q{1.0};  ///< charge magnitude per cylinder, statC
  double v{1.0};  ///< surface speed, cm/s

  /// r, L, M > 0; Q, v >= 0 (zero is the uncharged / static limit).
  void validate() const;
};

struct OrbitParams {
  double R{1.0};  ///< electron orbit radius, cm
  double u{1.0};  ///< electron speed, cm/s

  /// R > 0, u >= 0.
  void validate() const;
};

inline constexpr double kLongSolenoidAspectLimit = 0.1;

/// Warning text when r/L exceeds `limit` (the long-solenoid formulas are still evaluated).
std::optional<std::string> long_solenoid_warning(const SolenoidParams& s,
                                                 double limit = kLongSolenoidAspectLimit);

/// Throws ValidationError if the orbit does not enclose the solenoid.
void check_orbit_encloses(const SolenoidParams& s, const OrbitParams& o);

enum class Cylinder { PositiveCharge, NegativeCharge };
enum class Branch { Left, Right };

/// One (cylinder, branch) term of the source phase bookkeeping.
struct PhaseContribution {
  Cylinder cylinder;
  Branch branch;
  int displacement_sign;  ///< direction of the cylinder shift relative to its own motion
  double value;           ///< signed contribution to the left-minus-right relative phase, rad
};

struct ABResult {
  double flux{0.0};         ///< G*cm^2
  double phase_ab{0.0};     ///< rad, from the flux
  double delta_v{0.0};      ///< cm/s, magnitude of each cylinder's speed change
  double delta_x{0.0};      ///< cm, shift of each cylinder's packet per branch
  double lambda_db{0.0};    ///< cm, de Broglie wavelength of one cylinder
  double phase_local{0.0};  ///< rad, sum of the four source contributions
  std::array<PhaseContribution, 4> per_contribution{};

  /// phase_local / phase_ab - 1 (0 when both vanish).
  double identity_residual() const;
};

/// 4 pi Q v r / (c L), both cylinders together.
double solenoid_flux(const SolenoidParams& s, const PhysicalConstants& k);

/// e Phi / (c hbar).
double ab_phase_from_flux(double flux, const PhysicalConstants& k);

/// 4 pi e Q v r / (c^2 L hbar), the same phase without the intermediate flux.
double ab_phase_direct(const SolenoidParams& s, const PhysicalConstants& k);

/// Flux of the moving electron through the solenoid cross section seen at
/// angle theta: pi r^2 e u cos^3(theta) / (c R^2). DomainError outside [-pi/2, pi/2].
double electron_flux_at_angle(double theta, const OrbitParams& o, const SolenoidParams& s,
                              const PhysicalConstants& k);

enum class Method { ClosedForm, Quadrature };

/// Speed change of one cylinder while the electron enters one arm:
/// u Q e r / (c^2 M R L). The quadrature route integrates the EMF integrand
/// over theta in [-pi/2, pi/2] with adaptive Simpson (rel tol 1e-12).
double cylinder_velocity_change(const SolenoidParams& s, const OrbitParams& o,
                                const PhysicalConstants& k, Method method = Method::ClosedForm);

/// pi Q e r / (c^2 M L). Cross-checked against delta_v * (pi R / u) when u > 0;
/// a mismatch beyond 1e-14 relative throws ConsistencyError.
double cylinder_displacement(const SolenoidParams& s, const OrbitParams& o,
                             const PhysicalConstants& k);

/// delta_v * (pi R / u): the shift accumulated over the half-circle traversal time.
double cylinder_displacement_via_velocity(const SolenoidParams& s, const OrbitParams& o,
                                          const PhysicalConstants& k);

/// h / (M v). DomainError unless M > 0 and v > 0.
double de_broglie_wavelength(double M, double v, const PhysicalConstants& k);

/// Full chain: flux, AB phase, delta_v, delta_x, lambda and the four
/// (cylinder x branch) contributions whose sum is the local-model phase.
ABResult local_model_phase(const SolenoidParams& s, const OrbitParams& o,
                           const PhysicalConstants& k);

/// M * delta_v = u Q e r / (c^2 R L): momentum transferred to one cylinder.
double source_momentum_kick(const SolenoidParams& s, const OrbitParams& o,
                            const PhysicalConstants& k);

}  // namespace abclab::solenoid

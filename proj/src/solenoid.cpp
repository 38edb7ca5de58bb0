#include "abclab/solenoid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "abclab/errors.hpp"
#include "abclab/quadrature.hpp"

namespace abclab::solenoid {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kDisplacementRouteTol = 1e-14;

void require_positive(double x, const char* field) {
  if (!std::isfinite(x) || !(x > 0.0)) throw ValidationError(field, "must be finite and > 0");
}

void require_non_negative(double x, const char* field) {
  if (!std::isfinite(x) || x < 0.0) throw ValidationError(field, "must be finite and >= 0");
}

// Direction bookkeeping for one (cylinder, branch) term.
//  - The +Q cylinder surface moves along +v, the -Q cylinder along -v.
//  - The electron circulates one way in the left branch and the other way in
//    the right branch, so the induced EMF flips between branches.
//  - The force on a cylinder is charge sign times EMF direction.
// A shift along the cylinder's own momentum advances its phase by
// +2 pi dx / lambda; the relative phase is left minus right.
PhaseContribution contribution(Cylinder cyl, Branch branch, double source_phase) {
  const int charge_sign = cyl == Cylinder::PositiveCharge ? +1 : -1;
  const int momentum_sign = charge_sign;  // counter-rotation
  const int emf_sign = branch == Branch::Left ? +1 : -1;
  const int branch_weight = branch == Branch::Left ? +1 : -1;
  const int shift_sign = charge_sign * emf_sign;
  const int displacement_sign = shift_sign * momentum_sign;
  return {cyl, branch, displacement_sign, branch_weight * displacement_sign * source_phase};
}

}  // namespace

void SolenoidParams::validate() const {
  require_positive(r, "r_cm");
  require_positive(L, "L_cm");
  require_positive(M, "M_g");
  require_non_negative(Q, "Q_statC");
  require_non_negative(v, "v_cm_per_s");
}

void OrbitParams::validate() const {
  require_positive(R, "R_cm");
  require_non_negative(u, "u_cm_per_s");
}

std::optional<std::string> long_solenoid_warning(const SolenoidParams& s, double limit) {
  const double aspect = s.r / s.L;
  if (aspect <= limit) return std::nullopt;
  std::ostringstream os;
  os << "aspect ratio r/L = " << aspect << " exceeds " << limit
     << "; long-solenoid formulas are outside their validity range";
  return os.str();
}

void check_orbit_encloses(const SolenoidParams& s, const OrbitParams& o) {
  if (!(o.R > s.r)) throw ValidationError("R_cm", "electron orbit must enclose the solenoid (R > r)");
}

double ABResult::identity_residual() const {
  if (phase_ab == 0.0) return phase_local == 0.0 ? 0.0 : INFINITY;
  return phase_local / phase_ab - 1.0;
}

double solenoid_flux(const SolenoidParams& s, const PhysicalConstants& k) {
  s.validate();
  return 4.0 * pi * s.Q * s.v * s.r / (k.c() * s.L);
}

double ab_phase_from_flux(double flux, const PhysicalConstants& k) {
  return k.e() * flux / (k.c() * k.hbar());
}

double ab_phase_direct(const SolenoidParams& s, const PhysicalConstants& k) {
  s.validate();
  return 4.0 * pi * k.e() * s.Q * s.v * s.r / (k.c() * k.c() * s.L * k.hbar());
}

double electron_flux_at_angle(double theta, const OrbitParams& o, const SolenoidParams& s,
                              const PhysicalConstants& k) {
  if (!(theta >= -pi / 2 && theta <= pi / 2)) {
    throw DomainError("theta must lie in [-pi/2, pi/2]");
  }
  const double c3 = std::pow(std::cos(theta), 3);
  return pi * s.r * s.r * k.e() * o.u * c3 / (k.c() * o.R * o.R);
}

double cylinder_velocity_change(const SolenoidParams& s, const OrbitParams& o,
                                const PhysicalConstants& k, Method method) {
  s.validate();
  o.validate();
  const double c = k.c();
  if (method == Method::ClosedForm) {
    return o.u * s.Q * k.e() * s.r / (c * c * s.M * o.R * s.L);
  }

  // Flux-change rate x (1 / circumference) x (arc length per dtheta) x
  // circumference x surface charge density, integrated over the visible half.
  auto integrand = [&](double theta) {
    const double ct = std::cos(theta);
    if (ct == 0.0) return 0.0;
    const double flux_term = pi * s.r * s.r * k.e() * o.u * ct * ct * ct / (c * c * o.R * o.R);
    const double per_length = 1.0 / (2.0 * pi * s.r);
    const double arc = o.R / (ct * ct);
    const double circumference = 2.0 * pi * s.r;
    const double density = s.Q / (2.0 * pi * s.r * s.L);
    return flux_term * per_length * arc * circumference * density;
  };
  const auto result = quadrature::adaptive_simpson(integrand, -pi / 2, pi / 2,
                                                   {.rel_tol = 1e-12, .abs_tol = 0.0, .max_depth = 40});
  return result.value / s.M;
}

double cylinder_displacement_via_velocity(const SolenoidParams& s, const OrbitParams& o,
                                          const PhysicalConstants& k) {
  if (!(o.u > 0.0)) throw DomainError("traversal time is undefined for u = 0");
  return cylinder_velocity_change(s, o, k) * (pi * o.R / o.u);
}

double cylinder_displacement(const SolenoidParams& s, const OrbitParams& o,
                             const PhysicalConstants& k) {
  s.validate();
  o.validate();
  const double c = k.c();
  const double dx = pi * s.Q * k.e() * s.r / (c * c * s.M * s.L);
  if (o.u > 0.0) {
    const double via_v = cylinder_displacement_via_velocity(s, o, k);
    const double scale = std::max(std::abs(dx), std::abs(via_v));
    if (scale > 0.0 && std::abs(dx - via_v) > kDisplacementRouteTol * scale) {
      std::ostringstream os;
      os.precision(17);
      os << "displacement routes disagree: " << dx << " vs " << via_v;
      throw ConsistencyError(os.str());
    }
  }
  return dx;
}

double de_broglie_wavelength(double M, double v, const PhysicalConstants& k) {
  if (!(M > 0.0)) throw DomainError("de Broglie wavelength needs M > 0");
  if (!(v > 0.0)) throw DomainError("de Broglie wavelength needs v > 0");
  return k.h() / (M * v);
}

ABResult local_model_phase(const SolenoidParams& s, const OrbitParams& o,
                           const PhysicalConstants& k) {
  ABResult out;
  out.flux = solenoid_flux(s, k);
  out.phase_ab = ab_phase_from_flux(out.flux, k);
  out.delta_v = cylinder_velocity_change(s, o, k);
  out.delta_x = cylinder_displacement(s, o, k);
  out.lambda_db = de_broglie_wavelength(s.M, s.v, k);

  const double source_phase = 2.0 * pi * out.delta_x / out.lambda_db;
  std::size_t i = 0;
  for (Branch b : {Branch::Left, Branch::Right}) {
    for (Cylinder cyl : {Cylinder::PositiveCharge, Cylinder::NegativeCharge}) {
      out.per_contribution[i++] = contribution(cyl, b, source_phase);
    }
  }
  out.phase_local = 0.0;
  for (const auto& term : out.per_contribution) out.phase_local += term.value;
  return out;
}

double source_momentum_kick(const SolenoidParams& s, const OrbitParams& o,
                            const PhysicalConstants& k) {
  return s.M * cylinder_velocity_change(s, o, k);
}

}  // namespace abclab::solenoid

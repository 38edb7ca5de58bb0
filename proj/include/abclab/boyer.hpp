#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "abclab/units.hpp"
#include "abclab/vec3.hpp"

/// A polarised current-loop neutron near a uniformly charged line.
///
/// Geometry is restricted to the line along z and the magnetic moment parallel
/// to it. A moving moment carries an electric dipole d = V x mu / c and feels
/// the force (d . grad) E. The loop also holds mechanical momentum
/// p_h = mu x E / c, and along any trajectory dp_h/dt equals that force, so the
/// kinetic velocity never changes. The naive law m dv/dt = F ignores p_h and
/// turns a neutron bouncing between two mirrors into a perpetual energy source.
namespace abclab::boyer {

struct LineCharge {
  double lambda_c{1.0};           ///< linear charge density, statC/cm
  Vec3 axis{0.0, 0.0, 1.0};       ///< unit direction; must be +-z
  Vec3 axis_point{};              ///< any point on the line, cm
  double epsilon{1e-9};           ///< closest allowed approach to the axis, cm

  void validate() const;
  /// Distance from the axis, cm.
  double radial_distance(const Vec3& pos) const;
};

struct NeutronModel {
  double mass{1.0};  ///< g
  Vec3 mu{0.0, 0.0, 1.0};  ///< magnetic moment, erg/G

  /// mass > 0 and mu parallel to the line (|mu x axis| < 1e-12 |mu|).
  void validate(const LineCharge& lc) const;
};

/// `vel` is the kinetic velocity.
struct TrajectoryState {
  double t{0.0};
  Vec3 pos{};
  Vec3 vel{};
};

enum class Law {
  Full,        ///< m dv/dt = F_boyer - dp_h/dt, integrated as d(m v + p_h)/dt = F_boyer
  NaiveBoyer,  ///< m dv/dt = F_boyer
};

/// Elastic mirrors are planes x = mirror_a and x = mirror_b.
struct BounceConfig {
  double mirror_a{1.0};
  double mirror_b{3.0};
  int n_bounces{10};
  double dt{1e-3};
  Law law{Law::Full};
  /// Guards against trajectories that stall between the mirrors.
  long max_steps{50'000'000};

  void validate() const;
};

struct BounceSample {
  double t{0.0};
  Vec3 pos{};
  Vec3 vel{};
  double kinetic_energy{0.0};
  Vec3 hidden_momentum{};
  bool at_mirror{false};
};

struct BounceSeries {
  std::vector<BounceSample> samples;
  /// Index into `samples` of each mirror hit, in order. The sample is taken
  /// just after the normal velocity component was reversed.
  std::vector<std::size_t> bounce_samples;
};

/// 2 lambda_c rho_hat / rho. SingularityError within epsilon of the axis.
Vec3 line_field(const LineCharge& lc, const Vec3& pos);

/// V x mu / c.
Vec3 induced_dipole(const Vec3& vel, const Vec3& mu, const PhysicalConstants& k);

/// (d . grad) E with d = induced_dipole(vel, mu), from the closed-form field gradient.
Vec3 boyer_force(const LineCharge& lc, const Vec3& pos, const Vec3& vel, const Vec3& mu,
                 const PhysicalConstants& k);

/// mu x E / c.
Vec3 hidden_momentum(const LineCharge& lc, const Vec3& pos, const Vec3& mu,
                     const PhysicalConstants& k);

/// (vel . grad)(mu x E / c): rate of change of the hidden momentum along the path.
Vec3 hidden_momentum_rate(const LineCharge& lc, const Vec3& pos, const Vec3& vel, const Vec3& mu,
                          const PhysicalConstants& k);

/// One classical RK4 step. The input state is never modified, so a step that
/// runs into the axis (SingularityError) is simply rejected.
TrajectoryState step_trajectory(const LineCharge& lc, const NeutronModel& n,
                                const TrajectoryState& state, double dt, Law law,
                                const PhysicalConstants& k);

/// Fixed-step RK4 between two mirrors; each mirror crossing is located by
/// bisection on the sub-step to 1e-12 cm and the x velocity is reversed there.
/// Runs until `cfg.n_bounces` mirror hits.
BounceSeries simulate_bounce_experiment(const LineCharge& lc, const NeutronModel& n,
                                        const BounceConfig& cfg, const TrajectoryState& initial,
                                        const PhysicalConstants& k);

struct CircleLoop {
  Vec3 center{};
  double radius{1.0};
};

/// Closed polygon in a plane z = const; the last vertex must repeat the first.
struct PolylineLoop {
  std::vector<Vec3> vertices;
};

using LoopPath = std::variant<CircleLoop, PolylineLoop>;

/// (1 / (hbar c)) * closed integral of (mu x E) . dl, counter-clockwise seen
/// from +z for circles. Gauss-Legendre per panel, rel tol 1e-12.
/// DomainError for an open polyline, SingularityError if the path reaches the axis.
double ac_phase(const LineCharge& lc, const Vec3& mu, const LoopPath& loop,
                const PhysicalConstants& k);

/// 4 pi mu lambda_c / (hbar c) times the winding number of the loop around the line.
double ac_phase_expected(const LineCharge& lc, const Vec3& mu, int winding,
                         const PhysicalConstants& k);

}  // namespace abclab::boyer

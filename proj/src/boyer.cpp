#include "abclab/boyer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "abclab/errors.hpp"
#include "abclab/quadrature.hpp"

namespace abclab::boyer {

namespace {

constexpr double kMirrorTol = 1e-12;
constexpr int kMaxBisections = 200;

// Components of pos relative to the axis, in the plane perpendicular to it.
struct Planar {
  double x, y, rho2;
};

Planar planar(const LineCharge& lc, const Vec3& pos) {
  const double x = pos.x - lc.axis_point.x;
  const double y = pos.y - lc.axis_point.y;
  const double rho2 = x * x + y * y;
  if (!(std::sqrt(rho2) > lc.epsilon)) {
    std::ostringstream os;
    os << "position (" << pos.x << ", " << pos.y << ", " << pos.z
       << ") is within " << lc.epsilon << " cm of the line charge";
    throw SingularityError(os.str());
  }
  return {x, y, rho2};
}

// grad[j][i] = d E_i / d x_j. z rows and columns vanish.
using Gradient = std::array<std::array<double, 3>, 3>;

Gradient field_gradient(const LineCharge& lc, const Vec3& pos) {
  const auto [x, y, rho2] = planar(lc, pos);
  const double s = 2.0 * lc.lambda_c / (rho2 * rho2);
  const double dxx = s * (y * y - x * x);
  const double dxy = -2.0 * s * x * y;
  Gradient g{};
  g[0][0] = dxx;
  g[0][1] = dxy;
  g[1][0] = dxy;
  g[1][1] = -dxx;
  return g;
}

Vec3 directional(const Gradient& g, const Vec3& dir) {
  const std::array<double, 3> d{dir.x, dir.y, dir.z};
  std::array<double, 3> out{};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) out[i] += d[j] * g[j][i];
  }
  return {out[0], out[1], out[2]};
}

struct Phase {
  Vec3 pos;
  Vec3 mom;  // velocity (naive law) or total momentum m v + p_h (full law)
};

Phase operator+(const Phase& a, const Phase& b) { return {a.pos + b.pos, a.mom + b.mom}; }
Phase operator*(double s, const Phase& a) { return {s * a.pos, s * a.mom}; }

}  // namespace

void LineCharge::validate() const {
  if (!std::isfinite(lambda_c)) throw ValidationError("lambda_c", "must be finite");
  if (std::abs(norm(axis) - 1.0) > 1e-12) throw ValidationError("axis", "must be a unit vector");
  if (std::abs(axis.x) > 1e-12 || std::abs(axis.y) > 1e-12) {
    throw ValidationError("axis", "only lines parallel to z are supported");
  }
  if (!is_finite(axis_point)) throw ValidationError("axis_point", "must be finite");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon", "must be > 0");
}

double LineCharge::radial_distance(const Vec3& pos) const {
  return std::hypot(pos.x - axis_point.x, pos.y - axis_point.y);
}

void NeutronModel::validate(const LineCharge& lc) const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ValidationError("mass_g", "must be finite and > 0");
  if (!is_finite(mu)) throw ValidationError("mu", "must be finite");
  if (norm(cross(mu, lc.axis)) >= 1e-12 * norm(mu) && norm(mu) > 0.0) {
    throw ValidationError("mu", "magnetic moment must be parallel to the line charge");
  }
}

void BounceConfig::validate() const {
  if (!std::isfinite(mirror_a) || !std::isfinite(mirror_b) || mirror_a == mirror_b) {
    throw ValidationError("mirror_a_cm", "mirrors must be two distinct finite planes");
  }
  if (n_bounces < 1) throw ValidationError("n_bounces", "must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt_s", "must be finite and > 0");
}

Vec3 line_field(const LineCharge& lc, const Vec3& pos) {
  const auto [x, y, rho2] = planar(lc, pos);
  const double s = 2.0 * lc.lambda_c / rho2;
  return {s * x, s * y, 0.0};
}

Vec3 induced_dipole(const Vec3& vel, const Vec3& mu, const PhysicalConstants& k) {
  return cross(vel, mu) / k.c();
}

Vec3 boyer_force(const LineCharge& lc, const Vec3& pos, const Vec3& vel, const Vec3& mu,
                 const PhysicalConstants& k) {
  return directional(field_gradient(lc, pos), induced_dipole(vel, mu, k));
}

Vec3 hidden_momentum(const LineCharge& lc, const Vec3& pos, const Vec3& mu,
                     const PhysicalConstants& k) {
  return cross(mu, line_field(lc, pos)) / k.c();
}

Vec3 hidden_momentum_rate(const LineCharge& lc, const Vec3& pos, const Vec3& vel, const Vec3& mu,
                          const PhysicalConstants& k) {
  // mu is constant, so (v . grad)(mu x E) = mu x ((v . grad) E).
  return cross(mu, directional(field_gradient(lc, pos), vel)) / k.c();
}

TrajectoryState step_trajectory(const LineCharge& lc, const NeutronModel& n,
                                const TrajectoryState& state, double dt, Law law,
                                const PhysicalConstants& k) {
  const double m = n.mass;
  auto velocity = [&](const Phase& y) {
    return law == Law::Full ? (y.mom - hidden_momentum(lc, y.pos, n.mu, k)) / m : y.mom;
  };
  auto rhs = [&](const Phase& y) -> Phase {
    const Vec3 v = velocity(y);
    const Vec3 f = boyer_force(lc, y.pos, v, n.mu, k);
    return {v, law == Law::Full ? f : f / m};
  };

  const Phase y0{state.pos, law == Law::Full
                                ? m * state.vel + hidden_momentum(lc, state.pos, n.mu, k)
                                : state.vel};
  const Phase k1 = rhs(y0);
  const Phase k2 = rhs(y0 + (0.5 * dt) * k1);
  const Phase k3 = rhs(y0 + (0.5 * dt) * k2);
  const Phase k4 = rhs(y0 + dt * k3);
  const Phase y1 = y0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return {state.t + dt, y1.pos, velocity(y1)};
}

BounceSeries simulate_bounce_experiment(const LineCharge& lc, const NeutronModel& n,
                                        const BounceConfig& cfg, const TrajectoryState& initial,
                                        const PhysicalConstants& k) {
  lc.validate();
  n.validate(lc);
  cfg.validate();
  const double lo_plane = std::min(cfg.mirror_a, cfg.mirror_b);
  const double hi_plane = std::max(cfg.mirror_a, cfg.mirror_b);
  if (!(initial.pos.x > lo_plane && initial.pos.x < hi_plane)) {
    throw ValidationError("x_cm", "initial position must lie strictly between the mirrors");
  }

  auto sample = [&](const TrajectoryState& s, bool at_mirror) {
    return BounceSample{s.t, s.pos, s.vel, 0.5 * n.mass * dot(s.vel, s.vel),
                        hidden_momentum(lc, s.pos, n.mu, k), at_mirror};
  };
  auto outside = [&](double x) { return x > hi_plane || x < lo_plane; };

  BounceSeries series;
  series.samples.push_back(sample(initial, false));
  TrajectoryState state = initial;
  long steps = 0;
  while (static_cast<int>(series.bounce_samples.size()) < cfg.n_bounces) {
    if (++steps > cfg.max_steps) {
      throw NumericalError("bounce simulation exceeded max_steps without reaching all mirror hits");
    }
    TrajectoryState next = step_trajectory(lc, n, state, cfg.dt, cfg.law, k);
    if (!outside(next.pos.x)) {
      state = next;
      series.samples.push_back(sample(state, false));
      continue;
    }

    const double plane = next.pos.x > hi_plane ? hi_plane : lo_plane;
    double lo = 0.0;
    double hi = cfg.dt;
    TrajectoryState hit = next;
    for (int iter = 0; iter < kMaxBisections; ++iter) {
      const double mid = 0.5 * (lo + hi);
      hit = step_trajectory(lc, n, state, mid, cfg.law, k);
      if (std::abs(hit.pos.x - plane) <= kMirrorTol || mid == lo || mid == hi) break;
      if (outside(hit.pos.x)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    hit.vel.x = -hit.vel.x;
    state = hit;
    series.bounce_samples.push_back(series.samples.size());
    series.samples.push_back(sample(state, true));
  }
  return series;
}

double ac_phase_expected(const LineCharge& lc, const Vec3& mu, int winding,
                         const PhysicalConstants& k) {
  return 4.0 * std::numbers::pi * dot(mu, lc.axis) * lc.lambda_c * winding / (k.hbar() * k.c());
}

double ac_phase(const LineCharge& lc, const Vec3& mu, const LoopPath& loop,
                const PhysicalConstants& k) {
  lc.validate();
  const double scale = 4.0 * std::numbers::pi * norm(mu) * std::abs(lc.lambda_c);
  const quadrature::Options opts{.rel_tol = 1e-12, .abs_tol = 1e-16 * scale, .max_depth = 40};

  auto line_element = [&](const Vec3& pos, const Vec3& tangent) {
    return dot(cross(mu, line_field(lc, pos)), tangent);
  };

  double integral = 0.0;
  if (const auto* circle = std::get_if<CircleLoop>(&loop)) {
    if (!(circle->radius > 0.0)) throw DomainError("loop radius must be > 0");
    const double offset = lc.radial_distance(circle->center);
    if (std::abs(offset - circle->radius) <= lc.epsilon) {
      throw SingularityError("circular loop passes through the line charge");
    }
    constexpr int kPanels = 16;
    const double r = circle->radius;
    auto f = [&](double theta) {
      const Vec3 pos = circle->center + Vec3{r * std::cos(theta), r * std::sin(theta), 0.0};
      return line_element(pos, {-r * std::sin(theta), r * std::cos(theta), 0.0});
    };
    const double width = 2.0 * std::numbers::pi / kPanels;
    for (int p = 0; p < kPanels; ++p) {
      integral += quadrature::gauss_legendre(f, p * width, (p + 1) * width, opts).value;
    }
  } else {
    const auto& v = std::get<PolylineLoop>(loop).vertices;
    if (v.size() < 4) throw DomainError("polyline loop needs at least three distinct vertices");
    double extent = 0.0;
    for (const auto& p : v) extent = std::max(extent, norm(p - v.front()));
    if (norm(v.back() - v.front()) > 1e-12 * std::max(extent, 1.0)) {
      throw DomainError("polyline loop is open: last vertex must repeat the first");
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const Vec3 a = v[i];
      const Vec3 d = v[i + 1] - v[i];
      // Closest approach of the segment to the axis, in the transverse plane.
      const Vec3 to_axis{lc.axis_point.x - a.x, lc.axis_point.y - a.y, 0.0};
      const double len2 = d.x * d.x + d.y * d.y;
      const double t = len2 > 0.0 ? std::clamp((to_axis.x * d.x + to_axis.y * d.y) / len2, 0.0, 1.0)
                                  : 0.0;
      if (lc.radial_distance(a + t * d) <= lc.epsilon) {
        throw SingularityError("polyline loop passes through the line charge");
      }
      auto f = [&](double s) { return line_element(a + s * d, d); };
      integral += quadrature::gauss_legendre(f, 0.0, 1.0, opts).value;
    }
  }
  return integral / (k.hbar() * k.c());
}

}  // namespace abclab::boyer

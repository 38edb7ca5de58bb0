#include "abclab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "abclab/boyer.hpp"
#include "abclab/field_free.hpp"
#include "abclab/interferometry.hpp"
#include "abclab/runner.hpp"
#include "abclab/solenoid.hpp"
#include "abclab/units.hpp"

namespace abclab {

namespace {

constexpr double pi = std::numbers::pi;

// Portable uniform draws on top of mt19937_64 (the std distributions are not
// specified bit-for-bit across standard libraries).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  Vec3 vec(double lo = -1.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

 private:
  std::mt19937_64 rng_;
};

std::uint64_t split_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Outcome {
  Check check;
  std::int64_t samples;
};

using CheckFn = std::function<Outcome(Sampler&)>;

// Worst-case error against a tolerance: pass when worst <= tol.
Outcome worst_case(std::string name, double worst, double tol, std::int64_t samples) {
  return {Check::absolute(std::move(name), 0.0, worst, tol), samples};
}

double rel_err(double actual, double expected) {
  return expected == 0.0 ? std::abs(actual) : std::abs(actual / expected - 1.0);
}

double vec_rel_err(const Vec3& actual, const Vec3& expected) {
  const double scale = std::max(norm(expected), norm(actual));
  return scale == 0.0 ? 0.0 : norm(actual - expected) / scale;
}

solenoid::SolenoidParams random_solenoid(Sampler& rng) {
  return {rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3),
          rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3)};
}

solenoid::OrbitParams random_orbit(Sampler& rng) {
  return {rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3)};
}

PhysicalConstants random_constants(Sampler& rng) {
  return PhysicalConstants::custom(rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3),
                                   rng.log_uniform(1e-3, 1e3));
}

Vec3 random_planar_off_axis(Sampler& rng) {
  const double rho = rng.uniform(0.2, 5.0);
  const double phi = rng.uniform(0.0, 2.0 * pi);
  return {rho * std::cos(phi), rho * std::sin(phi), rng.uniform(-1.0, 1.0)};
}

const PhysicalConstants kUnity = make_constants(UnitSystem::ScaledUnity);

std::vector<std::pair<std::string, CheckFn>> suite() {
  using namespace interferometry;
  std::vector<std::pair<std::string, CheckFn>> checks;

  // core-units
  checks.emplace_back("cross_antisymmetry", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec3 a = rng.vec(), b = rng.vec();
      const Vec3 s = cross(a, b) + cross(b, a);
      worst = std::max({worst, std::abs(s.x), std::abs(s.y), std::abs(s.z)});
    }
    return worst_case("cross_antisymmetry", worst, 1e-15, 1000);
  });
  checks.emplace_back("cross_orthogonality", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec3 a = rng.vec(), b = rng.vec();
      const Vec3 c = cross(a, b);
      const double n = norm(a) * norm(b);
      if (n == 0.0) continue;
      worst = std::max({worst, std::abs(dot(c, a)) / n / norm(a), std::abs(dot(c, b)) / n / norm(b)});
    }
    return worst_case("cross_orthogonality", worst, 1e-12, 1000);
  });
  checks.emplace_back("constants_deterministic", [](Sampler&) {
    double worst = 0.0;
    for (auto sys : {UnitSystem::GaussianCgs, UnitSystem::ScaledUnity}) {
      const auto a = make_constants(sys), b = make_constants(sys);
      if (!(a == b)) worst = 1.0;
      worst = std::max(worst, rel_err(a.h(), 2.0 * pi * a.hbar()));
    }
    return worst_case("constants_deterministic", worst, 1e-15, 2);
  });

  // interferometry
  checks.emplace_back("probability_sum", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto p = detector_probabilities(rng.uniform(-20.0, 20.0), rng.unit());
      worst = std::max(worst, std::abs(p.p_a + p.p_b - 1.0));
    }
    return worst_case("probability_sum", worst, 1e-15, 1000);
  });
  checks.emplace_back("detector_periodicity", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double phi = rng.uniform(-10.0, 10.0), v = rng.unit();
      const auto p = detector_probabilities(phi, v), q = detector_probabilities(phi + 2.0 * pi, v);
      worst = std::max({worst, std::abs(p.p_a - q.p_a), std::abs(p.p_b - q.p_b)});
    }
    return worst_case("detector_periodicity", worst, 1e-12, 1000);
  });
  checks.emplace_back("overlap_bounded", [](Sampler& rng) {
    // Excess over 1 for any displacement; strict shortfall for nonzero ones.
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const GaussianPacket pk{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.log_uniform(0.1, 10), 1.0};
      const double sx = pk.sigma_x;
      const double dx = rng.uniform(1e-2, 3.0) * sx * (rng.unit() < 0.5 ? -1 : 1);
      const double dp = rng.uniform(1e-2, 3.0) / sx * (rng.unit() < 0.5 ? -1 : 1);
      const double m = std::abs(packet_overlap(pk, dx, dp, 1.0));
      if (!(m < 1.0)) worst = std::max(worst, m - 1.0 + 1e-300);
      if (std::abs(packet_overlap(pk, 0.0, 0.0, 1.0) - ComplexAmplitude{1.0, 0.0}) > 0.0) worst = 1.0;
    }
    return worst_case("overlap_bounded", worst, 0.0, 1000);
  });
  checks.emplace_back("overlap_quadrature", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const GaussianPacket pk{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.log_uniform(0.2, 5), 1.0};
      const double dx = rng.uniform(-3.0, 3.0) * pk.sigma_x;
      const double dp = rng.uniform(-3.0, 3.0) / pk.sigma_x;
      const auto closed = packet_overlap(pk, dx, dp, 1.0);
      const auto numeric = packet_overlap_numeric(pk, dx, dp, 1.0);
      worst = std::max(worst, std::abs(numeric - closed) / std::abs(closed));
    }
    return worst_case("overlap_quadrature", worst, 1e-8, 100);
  });
  checks.emplace_back("overlap_monotone", [](Sampler&) {
    const GaussianPacket pk{0.3, -0.2, 0.7, 1.0};
    std::int64_t violations = 0;
    double prev_x = 2.0, prev_p = 2.0;
    for (int i = 0; i <= 50; ++i) {
      const double mx = std::abs(packet_overlap(pk, 0.1 * i, 0.0, 1.0));
      const double mp = std::abs(packet_overlap(pk, 0.0, -0.1 * i, 1.0));
      violations += (mx > prev_x) + (mp > prev_p);
      prev_x = mx;
      prev_p = mp;
    }
    return Outcome{Check::absolute("overlap_monotone", 0.0, static_cast<double>(violations), 0.0), 102};
  });

  // ab-solenoid
  checks.emplace_back("factor_four_identity", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto s = random_solenoid(rng);
      const auto o = random_orbit(rng);
      const auto k = random_constants(rng);
      const auto res = solenoid::local_model_phase(s, o, k);
      worst = std::max(worst, std::abs(res.identity_residual()));
    }
    return worst_case("factor_four_identity", worst, 1e-12, 1000);
  });
  checks.emplace_back("velocity_kick_quadrature", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto s = random_solenoid(rng);
      const auto o = random_orbit(rng);
      const auto k = random_constants(rng);
      const double closed = solenoid::cylinder_velocity_change(s, o, k);
      const double quad = solenoid::cylinder_velocity_change(s, o, k, solenoid::Method::Quadrature);
      worst = std::max(worst, rel_err(quad, closed));
    }
    return worst_case("velocity_kick_quadrature", worst, 1e-9, 100);
  });
  checks.emplace_back("flux_angle_shape", [](Sampler& rng) {
    const auto s = random_solenoid(rng);
    const auto o = random_orbit(rng);
    const double peak = solenoid::electron_flux_at_angle(0.0, o, s, kUnity);
    double worst = std::max(std::abs(solenoid::electron_flux_at_angle(pi / 2, o, s, kUnity)),
                            std::abs(solenoid::electron_flux_at_angle(-pi / 2, o, s, kUnity))) /
                   peak;
    for (int i = 1; i < 100; ++i) {
      const double theta = pi / 2 * i / 100.0;
      const double plus = solenoid::electron_flux_at_angle(theta, o, s, kUnity);
      const double minus = solenoid::electron_flux_at_angle(-theta, o, s, kUnity);
      worst = std::max(worst, std::abs(plus - minus) / peak);
      if (plus >= peak) worst = 1.0;
    }
    return worst_case("flux_angle_shape", worst, 1e-15, 201);
  });
  checks.emplace_back("displacement_invariance", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto s = random_solenoid(rng);
      const auto k = random_constants(rng);
      const auto o1 = random_orbit(rng), o2 = random_orbit(rng);
      const double a = solenoid::cylinder_displacement_via_velocity(s, o1, k);
      const double b = solenoid::cylinder_displacement_via_velocity(s, o2, k);
      worst = std::max({worst, rel_err(a, b), rel_err(solenoid::cylinder_displacement(s, o1, k),
                                                      solenoid::cylinder_displacement(s, o2, k))});
    }
    return worst_case("displacement_invariance", worst, 1e-14, 200);
  });
  checks.emplace_back("phase_linearity", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto s = random_solenoid(rng);
      const auto k = random_constants(rng);
      const double base = solenoid::ab_phase_direct(s, k);
      auto ratio = [&](solenoid::SolenoidParams t, const PhysicalConstants& kk) {
        return solenoid::ab_phase_direct(t, kk) / base;
      };
      auto with = [&](double solenoid::SolenoidParams::*field, double factor) {
        auto t = s;
        t.*field *= factor;
        return ratio(t, k);
      };
      worst = std::max({worst, rel_err(with(&solenoid::SolenoidParams::Q, 2.0), 2.0),
                        rel_err(with(&solenoid::SolenoidParams::v, 3.0), 3.0),
                        rel_err(with(&solenoid::SolenoidParams::r, 5.0), 5.0),
                        rel_err(with(&solenoid::SolenoidParams::L, 2.0), 0.5),
                        rel_err(ratio(s, PhysicalConstants::custom(2.0 * k.e(), k.c(), k.hbar())), 2.0)});
    }
    return worst_case("phase_linearity", worst, 1e-12, 1000);
  });
  checks.emplace_back("visibility_pipeline", [](Sampler&) {
    const solenoid::SolenoidParams s{};
    const solenoid::OrbitParams o{};
    const double kick = solenoid::source_momentum_kick(s, o, kUnity);
    std::int64_t violations = 0;
    double prev = -1.0;
    double v_low = 0.0, v_high = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double ratio = std::pow(10.0, -2.0 + 4.0 * i / 19.0);  // sigma_p / delta_p
      const double sigma_x = kUnity.hbar() / (2.0 * ratio * kick);
      const double v = visibility_from_overlap(packet_overlap({0.0, 0.0, sigma_x, s.M}, 0.0, kick, kUnity.hbar()));
      violations += v <= prev;
      prev = v;
      if (i == 0) v_low = v;
      if (i == 19) v_high = v;
    }
    violations += !(v_high > 0.999) + !(v_low < 0.01);
    return Outcome{Check::absolute("visibility_pipeline", 0.0, static_cast<double>(violations), 0.0), 20};
  });

  // ac-boyer
  checks.emplace_back("boyer_identity", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      boyer::LineCharge lc;
      lc.lambda_c = rng.uniform(-3.0, 3.0);
      const Vec3 mu{0.0, 0.0, rng.uniform(-3.0, 3.0)};
      const Vec3 pos = random_planar_off_axis(rng);
      const Vec3 vel{rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0};
      worst = std::max(worst, vec_rel_err(boyer::boyer_force(lc, pos, vel, mu, kUnity),
                                          boyer::hidden_momentum_rate(lc, pos, vel, mu, kUnity)));
    }
    return worst_case("boyer_identity", worst, 1e-10, 1000);
  });
  checks.emplace_back("energy_audit_order", [](Sampler&) {
    boyer::LineCharge lc;
    const boyer::NeutronModel n{1.0, {0.0, 0.0, 1.0}};
    auto drift = [&](double dt, int steps) {
      boyer::TrajectoryState s{0.0, {-10.0, 0.5, 0.0}, {1.0, 0.0, 0.0}};
      double worst = 0.0;
      for (int i = 0; i < steps; ++i) {
        s = boyer::step_trajectory(lc, n, s, dt, boyer::Law::Full, kUnity);
        worst = std::max(worst, std::abs(norm(s.vel) - 1.0));
      }
      return worst;
    };
    const double coarse = drift(2e-3, 10'000);
    const double fine = drift(1e-3, 20'000);
    const double order = std::log2(coarse / fine);
    const bool ok = coarse < 1e-8 && std::abs(order - 4.0) <= 0.5;
    return Outcome{Check::absolute("energy_audit_order", 4.0, ok ? order : -order, 0.5), 30'000};
  });
  checks.emplace_back("naive_energy_growth", [](Sampler&) {
    boyer::LineCharge lc;
    const boyer::NeutronModel n{1.0, {0.0, 0.0, 0.05}};
    boyer::BounceConfig cfg{1.0, 3.0, 10, 1e-3, boyer::Law::NaiveBoyer};
    const auto series = boyer::simulate_bounce_experiment(lc, n, cfg, {0.0, {1.5, 1.0, 0.0}, {1.0, 0.0, 0.0}}, kUnity);
    std::int64_t violations = 0;
    double prev = series.samples.front().kinetic_energy;
    for (auto idx : series.bounce_samples) {
      violations += !(series.samples[idx].kinetic_energy > prev);
      prev = series.samples[idx].kinetic_energy;
    }
    return Outcome{Check::absolute("naive_energy_growth", 0.0, static_cast<double>(violations), 0.0), 10};
  });
  checks.emplace_back("ac_phase_deformation", [](Sampler& rng) {
    boyer::LineCharge lc;
    lc.lambda_c = rng.uniform(0.5, 2.0);
    const Vec3 mu{0.0, 0.0, rng.uniform(0.5, 2.0)};
    const double circle = boyer::ac_phase(lc, mu, boyer::CircleLoop{{0.3, -0.2, 0.0}, 1.5}, kUnity);
    const boyer::PolylineLoop square{{{-2, -1, 0}, {3, -1, 0}, {3, 2.5, 0}, {-2, 2.5, 0}, {-2, -1, 0}}};
    const double poly = boyer::ac_phase(lc, mu, square, kUnity);
    return worst_case("ac_phase_deformation", rel_err(poly, circle), 1e-9, 2);
  });
  checks.emplace_back("ac_phase_linearity", [](Sampler& rng) {
    boyer::LineCharge lc;
    lc.lambda_c = rng.uniform(0.5, 2.0);
    const Vec3 mu{0.0, 0.0, rng.uniform(0.5, 2.0)};
    const boyer::CircleLoop loop{{0.1, 0.2, 0.0}, 2.0};
    const double base = boyer::ac_phase(lc, mu, loop, kUnity);
    auto lc2 = lc;
    lc2.lambda_c *= 2.0;
    const double worst = std::max(rel_err(boyer::ac_phase(lc, 3.0 * mu, loop, kUnity) / base, 3.0),
                                  rel_err(boyer::ac_phase(lc2, mu, loop, kUnity) / base, 2.0));
    return worst_case("ac_phase_linearity", worst, 1e-10, 3);
  });

  // field-free
  checks.emplace_back("three_charge_residual", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double d = rng.log_uniform(1e-6, 1e6), e = rng.log_uniform(1e-12, 1e3);
      const auto cfg = field_free::make_three_charge(d, e);
      for (std::size_t j = 0; j < 3; ++j) {
        worst = std::max(worst, norm(field_free::field_at(cfg, j)) / (e / (d * d)));
      }
    }
    return worst_case("three_charge_residual", worst, 1e-12, 3000);
  });
  checks.emplace_back("three_charge_potential", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double d = rng.log_uniform(1e-6, 1e6), e = rng.log_uniform(1e-12, 1e3);
      worst = std::max(worst, rel_err(field_free::potential_at(field_free::make_three_charge(d, e), 0), 8.0 * e / d));
    }
    return worst_case("three_charge_potential", worst, 1e-14, 1000);
  });
  checks.emplace_back("field_covariance", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      field_free::ChargeConfiguration cfg;
      for (int j = 0; j < 4; ++j) cfg.charges.push_back({rng.uniform(-3, 3), rng.vec(-2, 2)});
      // Rotation about a random axis (Rodrigues) followed by a translation.
      Vec3 axis = rng.vec();
      axis = axis / norm(axis);
      const double ang = rng.uniform(0, 2 * pi);
      const Vec3 shift = rng.vec(-5, 5);
      auto rotate = [&](const Vec3& v) {
        return std::cos(ang) * v + std::sin(ang) * cross(axis, v) + (1 - std::cos(ang)) * dot(axis, v) * axis;
      };
      auto moved = cfg;
      for (auto& q : moved.charges) q.pos = rotate(q.pos) + shift;
      for (std::size_t j = 0; j < cfg.charges.size(); ++j) {
        const Vec3 e0 = rotate(field_free::field_at(cfg, j));
        const Vec3 e1 = field_free::field_at(moved, j);
        double scale = 0.0;
        for (std::size_t m = 0; m < cfg.charges.size(); ++m) {
          if (m == j) continue;
          const double r = norm(cfg.charges[m].pos - cfg.charges[j].pos);
          scale = std::max(scale, std::abs(cfg.charges[m].q) / (r * r));
        }
        worst = std::max(worst, norm(e1 - e0) / scale);
      }
    }
    return worst_case("field_covariance", worst, 1e-12, 800);
  });
  checks.emplace_back("newton_third_law", [](Sampler& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      field_free::ChargeConfiguration cfg;
      for (int j = 0; j < 5; ++j) cfg.charges.push_back({rng.uniform(-3, 3), rng.vec(-2, 2)});
      Vec3 total{};
      double scale = 0.0;
      for (std::size_t j = 0; j < cfg.charges.size(); ++j) {
        const Vec3 f = cfg.charges[j].q * field_free::field_at(cfg, j);
        total += f;
        scale = std::max(scale, norm(f));
        for (std::size_t m = 0; m < cfg.charges.size(); ++m) {
          if (m == j) continue;
          const double r = norm(cfg.charges[m].pos - cfg.charges[j].pos);
          scale = std::max(scale, std::abs(cfg.charges[m].q * cfg.charges[j].q) / (r * r));
        }
      }
      worst = std::max(worst, norm(total) / scale);
    }
    return worst_case("newton_third_law", worst, 1e-10, 200);
  });

  return checks;
}

}  // namespace

RunReport run_verify_suite(std::uint64_t seed, std::size_t max_workers) {
  const auto checks = suite();
  std::vector<Outcome> outcomes(checks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < checks.size();) {
      Sampler rng(split_mix(seed ^ split_mix(i + 1)));
      try {
        outcomes[i] = checks[i].second(rng);
      } catch (const std::exception& e) {
        outcomes[i] = {Check::absolute(checks[i].first, 0.0, std::nan(""), 0.0), 0};
      }
    }
  };
  const std::size_t workers = std::min(worker_count(max_workers), checks.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  RunReport report;
  report.scenario = {{"kind", "verify"}, {"seed", seed}};
  report.columns = {"check", "samples", "expected", "actual", "tol", "pass"};
  for (const auto& o : outcomes) {
    report.rows.push_back({o.check.name, o.samples, o.check.expected, o.check.actual, o.check.tol,
                           static_cast<std::int64_t>(o.check.pass ? 1 : 0)});
    report.checks.push_back(o.check);
  }
  return report;
}

}  // namespace abclab

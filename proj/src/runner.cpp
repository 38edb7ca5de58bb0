#include "abclab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "abclab/boyer.hpp"
#include "abclab/errors.hpp"
#include "abclab/field_free.hpp"
#include "abclab/interferometry.hpp"
#include "abclab/solenoid.hpp"

namespace abclab {

namespace {

using scenario::Kind;
using scenario::Scenario;

constexpr double pi = std::numbers::pi;

struct PointOutput {
  std::vector<std::vector<Cell>> rows;
  std::vector<Check> checks;
  std::optional<std::string> error;
};

// True when `phase` is within `tol` of `target` modulo 2 pi.
bool near_phase(double phase, double target, double tol = 1e-9) {
  return std::abs(std::remainder(phase - target, 2.0 * pi)) <= tol;
}

std::vector<std::string> kind_columns(Kind kind) {
  switch (kind) {
    case Kind::Mzi:
      return {"phase_rad", "p_a", "p_b"};
    case Kind::AbSolenoid:
      return {"flux", "phase_ab_rad", "delta_v_cm_per_s", "delta_x_cm", "lambda_db_cm",
              "phase_local_rad", "p_a", "p_b", "identity_residual"};
    case Kind::AcBounce:
      return {"law", "bounce", "t_s", "x_cm", "y_cm", "vx_cm_per_s", "vy_cm_per_s",
              "kinetic_energy_erg", "hidden_px_g_cm_per_s", "hidden_py_g_cm_per_s"};
    case Kind::AcPhase:
      return {"phase_rad", "expected_rad", "winding"};
    case Kind::FieldFree:
      return {"particle", "q_statC", "x_cm", "field_magnitude_statV_per_cm",
              "field_scale_statV_per_cm", "potential_statV", "field_free"};
  }
  return {};
}

void detector_anchor_checks(double phase, interferometry::DetectionProbabilities p,
                            double visibility, const char* to_a, const char* to_b,
                            std::vector<Check>& checks) {
  if (visibility != 1.0) return;
  if (near_phase(phase, 0.0)) checks.push_back(Check::absolute(to_a, 1.0, p.p_a, 1e-12));
  if (near_phase(phase, pi)) checks.push_back(Check::absolute(to_b, 1.0, p.p_b, 1e-12));
}

PointOutput run_mzi(const Scenario& s) {
  const auto m = scenario::mzi_setup(s);
  const double phase = interferometry::phase_from_path_shift(m.path_shift, m.wavelength);
  const auto p = interferometry::detector_probabilities(phase, m.visibility);
  PointOutput out;
  out.rows.push_back({phase, p.p_a, p.p_b});
  out.checks.push_back(Check::absolute("probability_sum", 1.0, p.p_a + p.p_b, 1e-15));
  detector_anchor_checks(phase, p, m.visibility, "tuned_exit_A", "half_wavelength_exit_B", out.checks);
  return out;
}

PointOutput run_ab(const Scenario& s) {
  using namespace solenoid;
  const auto a = scenario::ab_setup(s);
  const auto& k = s.constants;
  const ABResult res = local_model_phase(a.solenoid, a.orbit, k);
  const double dv_quad = cylinder_velocity_change(a.solenoid, a.orbit, k, Method::Quadrature);

  double visibility = a.visibility;
  if (a.source_sigma_x) {
    const interferometry::GaussianPacket source{0.0, 0.0, *a.source_sigma_x, a.solenoid.M};
    const double kick = source_momentum_kick(a.solenoid, a.orbit, k);
    visibility = interferometry::visibility_from_overlap(
        interferometry::packet_overlap(source, 0.0, kick, k.hbar()));
  }
  const auto p = interferometry::detector_probabilities(res.phase_local, visibility);

  PointOutput out;
  out.rows.push_back({res.flux, res.phase_ab, res.delta_v, res.delta_x, res.lambda_db,
                      res.phase_local, p.p_a, p.p_b, res.identity_residual()});
  out.checks.push_back(Check::relative("factor_four_identity", res.phase_ab, res.phase_local, 1e-12));
  out.checks.push_back(Check::relative("velocity_kick_quadrature", res.delta_v, dv_quad, 1e-9));
  detector_anchor_checks(res.phase_local, p, visibility, "zero_phase_exit_A", "pi_phase_exit_B",
                         out.checks);
  return out;
}

// Trapezoidal work integral of F . v over the recorded samples. At a mirror
// sample the pre-reflection velocity closes the incoming leg.
double work_integral(const scenario::BounceSetup& b, const boyer::BounceSeries& series,
                     const PhysicalConstants& k) {
  auto power = [&](const Vec3& pos, const Vec3& vel) {
    return dot(boyer::boyer_force(b.line, pos, vel, b.neutron.mu, k), vel);
  };
  double work = 0.0;
  for (std::size_t i = 1; i < series.samples.size(); ++i) {
    const auto& prev = series.samples[i - 1];
    const auto& cur = series.samples[i];
    Vec3 incoming = cur.vel;
    if (cur.at_mirror) incoming.x = -incoming.x;
    work += 0.5 * (cur.t - prev.t) * (power(prev.pos, prev.vel) + power(cur.pos, incoming));
  }
  return work;
}

PointOutput run_bounce(const Scenario& s) {
  const auto b = scenario::bounce_setup(s);
  const auto& k = s.constants;
  PointOutput out;
  for (const auto law : b.laws) {
    auto cfg = b.config;
    cfg.law = law;
    const auto series = boyer::simulate_bounce_experiment(b.line, b.neutron, cfg, b.initial, k);
    const std::string law_name = law == boyer::Law::Full ? "full" : "naive-boyer";

    auto row = [&](std::int64_t bounce, const boyer::BounceSample& smp) {
      out.rows.push_back({law_name, bounce, smp.t, smp.pos.x, smp.pos.y, smp.vel.x, smp.vel.y,
                          smp.kinetic_energy, smp.hidden_momentum.x, smp.hidden_momentum.y});
    };
    const auto& first = series.samples.front();
    row(0, first);
    for (std::size_t i = 0; i < series.bounce_samples.size(); ++i) {
      row(static_cast<std::int64_t>(i + 1), series.samples[series.bounce_samples[i]]);
    }

    const double ke0 = first.kinetic_energy;
    const double ke_final = series.samples[series.bounce_samples.back()].kinetic_energy;
    if (law == boyer::Law::Full) {
      const double speed0 = norm(first.vel);
      double drift = 0.0;
      for (const auto& smp : series.samples) drift = std::max(drift, std::abs(norm(smp.vel) / speed0 - 1.0));
      out.checks.push_back(Check::relative("energy_conserved(full)", ke0, ke_final, 1e-6));
      out.checks.push_back(Check::below("no_classical_lag(full)", 1e-6, drift));
    } else {
      if (b.line.lambda_c * b.neutron.mu.z != 0.0) {
        std::int64_t increases = 0;
        double previous = ke0;
        for (const auto idx : series.bounce_samples) {
          increases += series.samples[idx].kinetic_energy > previous ? 1 : 0;
          previous = series.samples[idx].kinetic_energy;
        }
        out.checks.push_back(Check::absolute("energy_grows(naive)", cfg.n_bounces,
                                             static_cast<double>(increases), 0.0));
      }
      const double gain = ke_final - ke0;
      const double work = work_integral(b, series, k);
      out.checks.push_back(gain == 0.0 && work == 0.0
                               ? Check::absolute("work_integral(naive)", 0.0, 0.0, 0.0)
                               : Check::relative("work_integral(naive)", work, gain, 1e-6));
    }
  }
  return out;
}

int winding_number(const boyer::LineCharge& lc, const boyer::LoopPath& loop) {
  if (const auto* c = std::get_if<boyer::CircleLoop>(&loop)) {
    return lc.radial_distance(c->center) < c->radius ? 1 : 0;
  }
  const auto& v = std::get<boyer::PolylineLoop>(loop).vertices;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a0 = std::atan2(v[i].y - lc.axis_point.y, v[i].x - lc.axis_point.x);
    const double a1 = std::atan2(v[i + 1].y - lc.axis_point.y, v[i + 1].x - lc.axis_point.x);
    total += std::remainder(a1 - a0, 2.0 * pi);
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

PointOutput run_ac_phase(const Scenario& s) {
  const auto a = scenario::ac_phase_setup(s);
  const auto& k = s.constants;
  const double phase = boyer::ac_phase(a.line, a.mu, a.loop, k);
  const int winding = winding_number(a.line, a.loop);
  const double expected = boyer::ac_phase_expected(a.line, a.mu, winding, k);
  PointOutput out;
  out.rows.push_back({phase, expected, static_cast<std::int64_t>(winding)});
  if (winding != 0) {
    out.checks.push_back(Check::relative("ac_phase_winding", expected, phase, 1e-9));
  } else {
    const double unit = std::abs(boyer::ac_phase_expected(a.line, a.mu, 1, k));
    out.checks.push_back(Check::absolute("ac_phase_winding", 0.0, phase, 1e-10 * std::max(1.0, unit)));
  }
  return out;
}

PointOutput run_field_free(const Scenario& s) {
  const auto f = scenario::field_free_setup(s);
  const auto report = field_free::verify_field_free(f.charges, f.tol);
  PointOutput out;
  for (const auto& entry : report) {
    const auto& q = f.charges.charges[entry.index];
    const double phi = field_free::potential_at(f.charges, entry.index);
    out.rows.push_back({static_cast<std::int64_t>(entry.index), q.q, q.pos.x, entry.field_magnitude,
                        entry.scale, phi, static_cast<std::int64_t>(entry.pass ? 1 : 0)});
    out.checks.push_back(
        Check::below("field_free_three_charge", f.tol * entry.scale, entry.field_magnitude));
  }
  const double phi_electron = field_free::potential_at(f.charges, 0);
  if (s.params.at("perturb_fraction") == 0.0) {
    out.checks.push_back(Check::relative("potential_at_electron", 8.0 * f.e / f.d, phi_electron, 1e-14));
  }
  out.checks.push_back(Check::above("potential_nonzero", 0.0, std::abs(phi_electron)));
  return out;
}

PointOutput run_point(const Scenario& s) {
  switch (s.kind) {
    case Kind::Mzi:
      return run_mzi(s);
    case Kind::AbSolenoid:
      return run_ab(s);
    case Kind::AcBounce:
      return run_bounce(s);
    case Kind::AcPhase:
      return run_ac_phase(s);
    case Kind::FieldFree:
      return run_field_free(s);
  }
  return {};
}

}  // namespace

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("ABCLAB_MAX_WORKERS")) n = std::strtoul(env, nullptr, 10);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

Json scenario_echo(const Scenario& s) {
  Json j;
  j["kind"] = std::string(scenario::to_string(s.kind));
  j["units"] = std::string(to_string(s.units));
  j["constants"] = {{"e_statC", s.constants.e()},
                    {"c_cm_per_s", s.constants.c()},
                    {"hbar_erg_s", s.constants.hbar()},
                    {"h_erg_s", s.constants.h()}};
  Json params = Json::object();
  for (const auto& [key, value] : s.params) params[key] = value;
  for (const auto& [key, value] : s.options) params[key] = value;
  if (!s.loop_vertices.empty()) {
    Json verts = Json::array();
    for (const auto& v : s.loop_vertices) verts.push_back({v.x, v.y});
    params["loop_vertices_cm"] = verts;
  }
  j["params"] = params;
  if (s.sweep) {
    j["sweep"] = {{"param", s.sweep->param},
                  {"from", s.sweep->from},
                  {"to", s.sweep->to},
                  {"steps", s.sweep->steps},
                  {"scale", s.sweep->log_scale ? "log" : "linear"}};
  }
  return j;
}

RunReport run_scenario(const Scenario& s, RunOptions opts) {
  if (opts.use_sweep && !s.sweep) throw ValidationError("sweep", "scenario has no sweep block");
  const bool sweeping = opts.use_sweep;
  const std::vector<double> values = sweeping ? s.sweep->values() : std::vector<double>{};
  const std::size_t n_points = sweeping ? values.size() : 1;

  std::vector<PointOutput> results(n_points);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < n_points;) {
      try {
        results[i] = sweeping ? run_point(scenario::with_param(s, s.sweep->param, values[i]))
                              : run_point(s);
      } catch (const std::exception& e) {
        results[i] = PointOutput{{}, {}, std::string(e.what())};
      }
    }
  };
  const std::size_t workers = std::min(worker_count(opts.max_workers), n_points);
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  RunReport report;
  report.scenario = scenario_echo(s);
  report.warnings = s.warnings;
  report.columns = {"sweep_index"};
  if (sweeping) report.columns.push_back(s.sweep->param);
  for (auto& c : kind_columns(s.kind)) report.columns.push_back(std::move(c));

  for (std::size_t i = 0; i < n_points; ++i) {
    auto& r = results[i];
    const auto index = static_cast<std::int64_t>(i);
    if (r.error) {
      report.errors.push_back({index, *r.error});
      continue;
    }
    for (auto& row : r.rows) {
      std::vector<Cell> full{index};
      if (sweeping) full.emplace_back(values[i]);
      full.insert(full.end(), row.begin(), row.end());
      report.rows.push_back(std::move(full));
    }
    for (auto& c : r.checks) {
      c.sweep_index = index;
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace abclab

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abclab/boyer.hpp"
#include "abclab/field_free.hpp"
#include "abclab/solenoid.hpp"
#include "abclab/units.hpp"
#include "abclab/vec3.hpp"

/// Scenario documents.
///
/// A scenario is one YAML document. Every physical parameter carries its unit
/// in the key name:
///
///   kind: ab-solenoid            # mzi | ab-solenoid | ac-bounce | ac-phase | field-free
///   units: scaled-unity          # gaussian-cgs (default) | scaled-unity
///   constants:                   # optional override of e, c, hbar
///     e_statC: 1
///     c_cm_per_s: 1
///     hbar_erg_s: 1
///   params:
///     r_cm: 1
///     ...
///   sweep:                       # optional; required by `abclab sweep`
///     param: v_cm_per_s
///     from: 0.1
///     to: 1.0
///     steps: 10
///     scale: linear              # linear | log
///   output:
///     format: csv                # csv | json
///     path: out.csv
namespace abclab::scenario {

enum class Kind { Mzi, AbSolenoid, AcBounce, AcPhase, FieldFree };

std::string_view to_string(Kind kind);
Kind parse_kind(std::string_view id);

struct Sweep {
  std::string param;
  double from{0.0};
  double to{1.0};
  int steps{2};
  bool log_scale{false};

  /// Grid values in input order; endpoints are reproduced exactly.
  std::vector<double> values() const;
};

struct OutputSpec {
  std::string format{"csv"};
  std::string path;  ///< empty: standard output
};

struct Scenario {
  Kind kind{Kind::AbSolenoid};
  UnitSystem units{UnitSystem::GaussianCgs};
  PhysicalConstants constants{make_constants(UnitSystem::GaussianCgs)};
  bool custom_constants{false};
  /// Numeric parameters with defaults applied, keyed by their unit-suffixed names.
  std::map<std::string, double> params;
  /// Non-numeric parameters (e.g. `law` for ac-bounce).
  std::map<std::string, std::string> options;
  /// Polygon for ac-phase (`loop_vertices_cm`), closed by repeating the first vertex.
  std::vector<Vec3> loop_vertices;
  std::optional<Sweep> sweep;
  OutputSpec output;
  std::vector<std::string> warnings;
};

/// Parses and validates a scenario. Throws ParseError for malformed YAML and
/// ValidationError (naming the field) for schema or invariant violations.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Re-validates `base` with one numeric parameter replaced.
Scenario with_param(const Scenario& base, const std::string& key, double value);

/// Numeric parameter keys accepted for a kind.
std::vector<std::string> parameter_keys(Kind kind);

// Typed views of a scenario's parameter block. Each one validates against the
// owning module's invariants and throws ValidationError naming the key.

struct MziSetup {
  double wavelength{1.0};
  double path_shift{0.0};
  double visibility{1.0};
};

struct AbSetup {
  solenoid::SolenoidParams solenoid;
  solenoid::OrbitParams orbit;
  double visibility{1.0};
  /// When set, visibility comes from the overlap of the kicked source packet.
  std::optional<double> source_sigma_x;
};

struct BounceSetup {
  boyer::LineCharge line;
  boyer::NeutronModel neutron;
  boyer::BounceConfig config;
  boyer::TrajectoryState initial;
  std::vector<boyer::Law> laws;
};

struct AcPhaseSetup {
  boyer::LineCharge line;
  Vec3 mu;
  boyer::LoopPath loop;
};

struct FieldFreeSetup {
  field_free::ChargeConfiguration charges;
  double d{1.0};
  double e{1.0};
  double tol{1e-12};
};

MziSetup mzi_setup(const Scenario& s);
AbSetup ab_setup(const Scenario& s);
BounceSetup bounce_setup(const Scenario& s);
AcPhaseSetup ac_phase_setup(const Scenario& s);
FieldFreeSetup field_free_setup(const Scenario& s);

}  // namespace abclab::scenario

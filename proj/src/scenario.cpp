#include "abclab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "abclab/errors.hpp"

namespace abclab::scenario {

namespace {

struct ParamSpec {
  std::string key;
  std::optional<double> fallback;  // nullopt: required unless `optional`
  bool optional{false};
};

const std::vector<ParamSpec>& schema(Kind kind) {
  static const std::map<Kind, std::vector<ParamSpec>> table{
      {Kind::Mzi,
       {{"wavelength_cm", {}}, {"path_shift_cm", 0.0}, {"visibility", 1.0}}},
      {Kind::AbSolenoid,
       {{"r_cm", {}},
        {"L_cm", {}},
        {"M_g", {}},
        {"Q_statC", {}},
        {"v_cm_per_s", {}},
        {"R_cm", {}},
        {"u_cm_per_s", {}},
        {"visibility", 1.0},
        {"source_sigma_x_cm", {}, true}}},
      {Kind::AcBounce,
       {{"lambda_statC_per_cm", {}},
        {"mu_erg_per_G", {}},
        {"mass_g", {}},
        {"mirror_a_cm", {}},
        {"mirror_b_cm", {}},
        {"n_bounces", 10.0},
        {"dt_s", {}},
        {"x_cm", {}},
        {"y_cm", {}},
        {"vx_cm_per_s", {}},
        {"vy_cm_per_s", 0.0}}},
      {Kind::AcPhase,
       {{"lambda_statC_per_cm", {}},
        {"mu_erg_per_G", {}},
        {"center_x_cm", 0.0},
        {"center_y_cm", 0.0},
        {"radius_cm", {}, true}}},
      {Kind::FieldFree,
       {{"d_cm", {}},
        {"charge_statC", {}, true},
        {"tol", 1e-12},
        {"perturb_fraction", 0.0}}},
  };
  return table.at(kind);
}

const std::map<Kind, std::vector<std::string>>& option_keys() {
  static const std::map<Kind, std::vector<std::string>> table{
      {Kind::Mzi, {}},
      {Kind::AbSolenoid, {}},
      {Kind::AcBounce, {"law"}},
      {Kind::AcPhase, {"loop_vertices_cm"}},
      {Kind::FieldFree, {}},
  };
  return table;
}

int line_of(const YAML::Node& node) { return node.Mark().is_null() ? 0 : node.Mark().line + 1; }

std::string at_line(const YAML::Node& node) {
  const int line = line_of(node);
  return line > 0 ? " (line " + std::to_string(line) + ")" : "";
}

double as_number(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ValidationError(field, "expected a number" + at_line(node));
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ValidationError(field, "expected a number, got '" + node.Scalar() + "'" + at_line(node));
  }
}

std::string as_string(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ValidationError(field, "expected a string" + at_line(node));
  return node.Scalar();
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& known,
                    const std::string& prefix) {
  for (const auto& kv : map) {
    const auto key = kv.first.Scalar();
    if (!known.contains(key)) {
      throw ValidationError(prefix + key, "unknown key" + at_line(kv.first));
    }
  }
}

double param(const Scenario& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) throw ValidationError(key, "missing required parameter");
  return it->second;
}

std::optional<double> maybe_param(const Scenario& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) return std::nullopt;
  return it->second;
}

void require_finite(const Scenario& s) {
  for (const auto& [key, value] : s.params) {
    if (!std::isfinite(value)) throw ValidationError(key, "must be finite");
  }
}

int as_count(double value, const std::string& field) {
  if (value != std::floor(value) || value < 1 || value > 1e9) {
    throw ValidationError(field, "must be a positive integer");
  }
  return static_cast<int>(value);
}

// Runs the kind's typed view so invariant violations surface at parse time.
void validate(Scenario& s) {
  require_finite(s);
  switch (s.kind) {
    case Kind::Mzi:
      mzi_setup(s);
      break;
    case Kind::AbSolenoid: {
      const auto setup = ab_setup(s);
      if (auto w = solenoid::long_solenoid_warning(setup.solenoid)) s.warnings.push_back(*w);
      if (!(setup.orbit.R > setup.solenoid.r)) {
        s.warnings.push_back("orbit radius R_cm does not exceed cylinder radius r_cm");
      }
      break;
    }
    case Kind::AcBounce:
      bounce_setup(s);
      break;
    case Kind::AcPhase:
      ac_phase_setup(s);
      break;
    case Kind::FieldFree:
      field_free_setup(s);
      break;
  }
  if (s.sweep) {
    const auto keys = parameter_keys(s.kind);
    if (std::find(keys.begin(), keys.end(), s.sweep->param) == keys.end()) {
      throw ValidationError("sweep.param", "'" + s.sweep->param + "' is not a numeric parameter of " +
                                               std::string(to_string(s.kind)));
    }
    if (s.sweep->steps < 2) throw ValidationError("sweep.steps", "must be >= 2");
    if (!std::isfinite(s.sweep->from) || !std::isfinite(s.sweep->to)) {
      throw ValidationError("sweep.from", "sweep bounds must be finite");
    }
    if (s.sweep->log_scale && !(s.sweep->from > 0.0 && s.sweep->to > 0.0)) {
      throw ValidationError("sweep.scale", "log sweeps need positive bounds");
    }
  }
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Mzi:
      return "mzi";
    case Kind::AbSolenoid:
      return "ab-solenoid";
    case Kind::AcBounce:
      return "ac-bounce";
    case Kind::AcPhase:
      return "ac-phase";
    case Kind::FieldFree:
      return "field-free";
  }
  return "unknown";
}

Kind parse_kind(std::string_view id) {
  for (Kind k : {Kind::Mzi, Kind::AbSolenoid, Kind::AcBounce, Kind::AcPhase, Kind::FieldFree}) {
    if (to_string(k) == id) return k;
  }
  throw ValidationError("kind", "unknown scenario kind '" + std::string(id) + "'");
}

std::vector<double> Sweep::values() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    if (i == 0) {
      out[i] = from;
    } else if (i == steps - 1) {
      out[i] = to;
    } else if (log_scale) {
      out[i] = std::exp(std::log(from) + t * (std::log(to) - std::log(from)));
    } else {
      out[i] = from + t * (to - from);
    }
  }
  return out;
}

std::vector<std::string> parameter_keys(Kind kind) {
  std::vector<std::string> keys;
  for (const auto& spec : schema(kind)) keys.push_back(spec.key);
  return keys;
}

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.line + 1, e.msg);
  }
  if (!root.IsMap()) throw ParseError(line_of(root), "scenario document must be a mapping");
  reject_unknown(root, {"kind", "units", "constants", "params", "sweep", "output"}, "");

  Scenario s;
  if (!root["kind"]) throw ValidationError("kind", "missing scenario kind");
  s.kind = parse_kind(as_string(root["kind"], "kind"));

  if (root["units"]) {
    try {
      s.units = parse_unit_system(as_string(root["units"], "units"));
    } catch (const ConfigurationError& e) {
      throw ValidationError("units", e.what());
    }
  }
  s.constants = make_constants(s.units);
  if (const auto c = root["constants"]) {
    if (!c.IsMap()) throw ValidationError("constants", "expected a mapping" + at_line(c));
    reject_unknown(c, {"e_statC", "c_cm_per_s", "hbar_erg_s"}, "constants.");
    auto pick = [&](const char* key, double fallback) {
      return c[key] ? as_number(c[key], std::string("constants.") + key) : fallback;
    };
    try {
      s.constants = PhysicalConstants::custom(pick("e_statC", s.constants.e()),
                                              pick("c_cm_per_s", s.constants.c()),
                                              pick("hbar_erg_s", s.constants.hbar()));
    } catch (const ConfigurationError& e) {
      throw ValidationError("constants", e.what());
    }
    s.custom_constants = true;
  }

  const YAML::Node params = root["params"];
  if (params && !params.IsMap()) throw ValidationError("params", "expected a mapping" + at_line(params));
  std::set<std::string> known;
  for (const auto& spec : schema(s.kind)) known.insert(spec.key);
  for (const auto& key : option_keys().at(s.kind)) known.insert(key);
  if (params) reject_unknown(params, known, "");

  for (const auto& spec : schema(s.kind)) {
    if (params && params[spec.key]) {
      s.params[spec.key] = as_number(params[spec.key], spec.key);
    } else if (spec.fallback) {
      s.params[spec.key] = *spec.fallback;
    } else if (!spec.optional) {
      throw ValidationError(spec.key, "missing required parameter");
    }
  }
  if (params && params["law"]) s.options["law"] = as_string(params["law"], "law");
  if (params && params["loop_vertices_cm"]) {
    const auto verts = params["loop_vertices_cm"];
    if (!verts.IsSequence()) throw ValidationError("loop_vertices_cm", "expected a list of [x, y]");
    for (const auto& v : verts) {
      if (!v.IsSequence() || v.size() != 2) {
        throw ValidationError("loop_vertices_cm", "each vertex must be [x, y]" + at_line(v));
      }
      s.loop_vertices.push_back(
          {as_number(v[0], "loop_vertices_cm"), as_number(v[1], "loop_vertices_cm"), 0.0});
    }
    if (!s.loop_vertices.empty() && !(s.loop_vertices.back() == s.loop_vertices.front())) {
      s.loop_vertices.push_back(s.loop_vertices.front());
    }
  }

  if (const auto sw = root["sweep"]) {
    if (!sw.IsMap()) throw ValidationError("sweep", "expected a mapping" + at_line(sw));
    reject_unknown(sw, {"param", "from", "to", "steps", "scale"}, "sweep.");
    for (const char* key : {"param", "from", "to", "steps"}) {
      if (!sw[key]) throw ValidationError(std::string("sweep.") + key, "missing");
    }
    Sweep sweep;
    sweep.param = as_string(sw["param"], "sweep.param");
    sweep.from = as_number(sw["from"], "sweep.from");
    sweep.to = as_number(sw["to"], "sweep.to");
    const double steps = as_number(sw["steps"], "sweep.steps");
    if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
      throw ValidationError("sweep.steps", "must be an integer >= 2");
    }
    sweep.steps = static_cast<int>(steps);
    if (sw["scale"]) {
      const auto scale = as_string(sw["scale"], "sweep.scale");
      if (scale != "linear" && scale != "log") throw ValidationError("sweep.scale", "must be linear or log");
      sweep.log_scale = scale == "log";
    }
    s.sweep = sweep;
  }

  if (const auto out = root["output"]) {
    if (!out.IsMap()) throw ValidationError("output", "expected a mapping" + at_line(out));
    reject_unknown(out, {"format", "path"}, "output.");
    if (out["format"]) s.output.format = as_string(out["format"], "output.format");
    if (out["path"]) s.output.path = as_string(out["path"], "output.path");
    if (s.output.format != "csv" && s.output.format != "json") {
      throw ValidationError("output.format", "must be csv or json");
    }
  }

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Scenario with_param(const Scenario& base, const std::string& key, double value) {
  Scenario s = base;
  s.params[key] = value;
  s.sweep.reset();
  s.warnings.clear();
  validate(s);
  s.sweep = base.sweep;
  return s;
}

MziSetup mzi_setup(const Scenario& s) {
  MziSetup m{param(s, "wavelength_cm"), param(s, "path_shift_cm"), param(s, "visibility")};
  if (!(m.wavelength > 0.0)) throw ValidationError("wavelength_cm", "must be > 0");
  if (!(m.visibility >= 0.0 && m.visibility <= 1.0)) throw ValidationError("visibility", "must lie in [0, 1]");
  return m;
}

AbSetup ab_setup(const Scenario& s) {
  AbSetup a;
  a.solenoid = {param(s, "r_cm"), param(s, "L_cm"), param(s, "M_g"), param(s, "Q_statC"),
                param(s, "v_cm_per_s")};
  a.orbit = {param(s, "R_cm"), param(s, "u_cm_per_s")};
  a.solenoid.validate();
  a.orbit.validate();
  if (!(a.solenoid.v > 0.0)) throw ValidationError("v_cm_per_s", "must be > 0 (de Broglie wavelength)");
  a.visibility = param(s, "visibility");
  if (!(a.visibility >= 0.0 && a.visibility <= 1.0)) throw ValidationError("visibility", "must lie in [0, 1]");
  a.source_sigma_x = maybe_param(s, "source_sigma_x_cm");
  if (a.source_sigma_x && !(*a.source_sigma_x > 0.0)) {
    throw ValidationError("source_sigma_x_cm", "must be > 0");
  }
  return a;
}

BounceSetup bounce_setup(const Scenario& s) {
  BounceSetup b;
  b.line.lambda_c = param(s, "lambda_statC_per_cm");
  b.neutron.mass = param(s, "mass_g");
  b.neutron.mu = {0.0, 0.0, param(s, "mu_erg_per_G")};
  b.config.mirror_a = param(s, "mirror_a_cm");
  b.config.mirror_b = param(s, "mirror_b_cm");
  b.config.n_bounces = as_count(param(s, "n_bounces"), "n_bounces");
  b.config.dt = param(s, "dt_s");
  b.initial.pos = {param(s, "x_cm"), param(s, "y_cm"), 0.0};
  b.initial.vel = {param(s, "vx_cm_per_s"), param(s, "vy_cm_per_s"), 0.0};
  b.line.validate();
  b.neutron.validate(b.line);
  b.config.validate();

  const double lo = std::min(b.config.mirror_a, b.config.mirror_b);
  const double hi = std::max(b.config.mirror_a, b.config.mirror_b);
  if (!(b.initial.pos.x > lo && b.initial.pos.x < hi)) {
    throw ValidationError("x_cm", "initial position must lie strictly between the mirrors");
  }
  if (b.initial.vel.x == 0.0) throw ValidationError("vx_cm_per_s", "must be nonzero to reach a mirror");
  if (!(b.line.radial_distance(b.initial.pos) > b.line.epsilon)) {
    throw ValidationError("y_cm", "initial position lies on the line charge");
  }

  const auto it = s.options.find("law");
  const std::string law = it == s.options.end() ? "both" : it->second;
  if (law == "full") {
    b.laws = {boyer::Law::Full};
  } else if (law == "naive-boyer") {
    b.laws = {boyer::Law::NaiveBoyer};
  } else if (law == "both") {
    b.laws = {boyer::Law::Full, boyer::Law::NaiveBoyer};
  } else {
    throw ValidationError("law", "must be full, naive-boyer or both");
  }
  return b;
}

AcPhaseSetup ac_phase_setup(const Scenario& s) {
  AcPhaseSetup a;
  a.line.lambda_c = param(s, "lambda_statC_per_cm");
  a.line.validate();
  a.mu = {0.0, 0.0, param(s, "mu_erg_per_G")};
  const auto radius = maybe_param(s, "radius_cm");
  if (radius && !s.loop_vertices.empty()) {
    throw ValidationError("radius_cm", "give either radius_cm or loop_vertices_cm, not both");
  }
  if (radius) {
    if (!(*radius > 0.0)) throw ValidationError("radius_cm", "must be > 0");
    const Vec3 centre{param(s, "center_x_cm"), param(s, "center_y_cm"), 0.0};
    if (std::abs(a.line.radial_distance(centre) - *radius) <= a.line.epsilon) {
      throw ValidationError("radius_cm", "loop passes through the line charge");
    }
    a.loop = boyer::CircleLoop{centre, *radius};
  } else if (!s.loop_vertices.empty()) {
    if (s.loop_vertices.size() < 4) throw ValidationError("loop_vertices_cm", "need at least three vertices");
    a.loop = boyer::PolylineLoop{s.loop_vertices};
  } else {
    throw ValidationError("radius_cm", "missing loop: give radius_cm or loop_vertices_cm");
  }
  return a;
}

FieldFreeSetup field_free_setup(const Scenario& s) {
  FieldFreeSetup f;
  f.d = param(s, "d_cm");
  f.e = maybe_param(s, "charge_statC").value_or(s.constants.e());
  f.tol = param(s, "tol");
  if (!(f.d > 0.0)) throw ValidationError("d_cm", "must be > 0");
  if (!(f.e > 0.0)) throw ValidationError("charge_statC", "must be > 0");
  if (!(f.tol > 0.0)) throw ValidationError("tol", "must be > 0");
  f.charges = field_free::make_three_charge(f.d, f.e);
  f.charges.charges[1].pos.x += param(s, "perturb_fraction") * f.d;
  f.charges.validate();
  return f;
}

}  // namespace abclab::scenario

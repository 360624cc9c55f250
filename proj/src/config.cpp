#include "arcfreq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace arcfreq::cli {

using nlohmann::json;

ConfigError::ConfigError(const std::string& message, std::string field, int line)
    : std::runtime_error([&] {
        std::string s;
        if (line > 0) s += "line " + std::to_string(line) + ": ";
        if (!field.empty()) s += field + ": ";
        return s + message;
      }()),
      field_(std::move(field)),
      line_(line) {}

namespace {

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Best-effort source line of a JSON pointer: finds each object key in turn.
int line_of(const std::string& text, const std::string& pointer) {
  std::size_t pos = 0;
  std::istringstream parts(pointer);
  std::string token;
  bool found = false;
  while (std::getline(parts, token, '/')) {
    if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) continue;
    const std::size_t at = text.find("\"" + token + "\"", pos);
    if (at == std::string::npos) break;
    pos = at;
    found = true;
  }
  return found ? line_at(text, pos) : 0;
}

struct Reader {
  const std::string& text;

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw ConfigError(message, pointer, line_of(text, pointer));
  }

  void check_keys(const json& obj, const std::string& pointer,
                  const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      if (!allowed.count(key)) fail(pointer + "/" + key, "unknown field");
    }
  }

  double number(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    return v.get<double>();
  }

  std::string string(const json& v, const std::string& pointer) const {
    if (!v.is_string()) fail(pointer, "expected a string");
    return v.get<std::string>();
  }

  /// Plain number (SI) or {"value": v, "unit": u} with u in `units`.
  double quantity(const json& v, const std::string& pointer,
                  const std::map<std::string, double>& units) const {
    if (v.is_number()) return v.get<double>();
    if (!v.is_object()) fail(pointer, "expected a number or {\"value\", \"unit\"}");
    check_keys(v, pointer, {"value", "unit"});
    if (!v.contains("value")) fail(pointer + "/value", "missing");
    const double x = number(v["value"], pointer + "/value");
    if (!v.contains("unit")) return x;
    const std::string u = string(v["unit"], pointer + "/unit");
    const auto it = units.find(u);
    if (it == units.end()) {
      std::string known;
      for (const auto& [name, _] : units) known += (known.empty() ? "" : ", ") + name;
      fail(pointer + "/unit", "unknown unit '" + u + "' (expected one of: " + known + ")");
    }
    return x * it->second;
  }
};

const std::map<std::string, double> kLength = {{"m", 1.0}, {"um", 1e-6}, {"nm", 1e-9}};
const std::map<std::string, double> kArea = {{"m2", 1.0}, {"um2", 1e-12}, {"nm2", 1e-18}};
const std::map<std::string, double> kAngle = {{"rad", 1.0}, {"deg", std::numbers::pi / 180.0}};
const std::map<std::string, double> kModulus = {{"Pa", 1.0}, {"GPa", 1e9}};
const std::map<std::string, double> kDensity = {{"kg/m3", 1.0}};
const std::map<std::string, double> kPlain = {{"1", 1.0}};

const std::map<std::string, double>& units_for(const std::string& parameter) {
  if (parameter == "thickness_h0" || parameter == "radius_R") return kLength;
  if (parameter == "nonlocal_eta") return kArea;
  if (parameter == "central_angle_beta") return kAngle;
  return kPlain;
}

template <typename T>
T lookup(const std::map<std::string, T>& table, const std::string& name, const char* what) {
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [k, _] : table) known += (known.empty() ? "" : ", ") + k;
    throw std::invalid_argument(std::string("unknown ") + what + " '" + name + "' (expected one of: " + known + ")");
  }
  return it->second;
}

Material read_material(const Reader& r, const json& j) {
  Material m;
  r.check_keys(j, "/material", {"youngs_modulus", "poisson_ratio", "density", "nonlocal_length_sq"});
  if (j.contains("youngs_modulus")) m.youngs_modulus = r.quantity(j["youngs_modulus"], "/material/youngs_modulus", kModulus);
  if (j.contains("poisson_ratio")) m.poisson_ratio = r.number(j["poisson_ratio"], "/material/poisson_ratio");
  if (j.contains("density")) m.density = r.quantity(j["density"], "/material/density", kDensity);
  if (j.contains("nonlocal_length_sq")) {
    m.nonlocal_length_sq = r.quantity(j["nonlocal_length_sq"], "/material/nonlocal_length_sq", kArea);
  }
  return m;
}

ArchGeometry read_geometry(const Reader& r, const json& j) {
  r.check_keys(j, "/geometry", {"radius", "width", "central_angle", "thickness", "steps"});
  double radius = 110e-9;
  double width = 1e-9;
  double beta = std::numbers::pi / 6.0;
  double h0 = 5e-9;
  if (j.contains("radius")) radius = r.quantity(j["radius"], "/geometry/radius", kLength);
  if (j.contains("width")) width = r.quantity(j["width"], "/geometry/width", kLength);
  if (j.contains("central_angle")) beta = r.quantity(j["central_angle"], "/geometry/central_angle", kAngle);
  if (j.contains("thickness")) h0 = r.quantity(j["thickness"], "/geometry/thickness", kLength);
  ArchGeometry g = ArchGeometry::uniform(radius, width, beta, h0);
  if (j.contains("steps")) {
    const json& steps = j["steps"];
    if (!steps.is_array()) r.fail("/geometry/steps", "expected an array");
    g.interface_angles = {0.0};
    g.thicknesses = {h0};
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string p = "/geometry/steps/" + std::to_string(i);
      r.check_keys(steps[i], p, {"angle", "thickness"});
      if (!steps[i].contains("angle")) r.fail(p + "/angle", "missing");
      if (!steps[i].contains("thickness")) r.fail(p + "/thickness", "missing");
      g.interface_angles.push_back(r.quantity(steps[i]["angle"], p + "/angle", kAngle));
      g.thicknesses.push_back(r.quantity(steps[i]["thickness"], p + "/thickness", kLength));
    }
    g.interface_angles.push_back(beta);
  }
  return g;
}

std::vector<CrackEntry> read_cracks(const Reader& r, const json& j) {
  if (!j.is_array()) r.fail("/cracks", "expected an array");
  std::vector<CrackEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = "/cracks/" + std::to_string(i);
    const json& c = j[i];
    r.check_keys(c, p, {"interface", "location", "angle", "depth_ratio", "shape"});
    CrackEntry e;
    int placements = 0;
    if (c.contains("interface")) {
      const json& v = c["interface"];
      if (!v.is_number_unsigned()) r.fail(p + "/interface", "expected a positive integer");
      e.interface_index = v.get<std::size_t>();
      ++placements;
    }
    if (c.contains("location")) {
      e.location = r.number(c["location"], p + "/location");
      if (!(*e.location > 0.0 && *e.location < 1.0)) r.fail(p + "/location", "must lie in (0, 1)");
      ++placements;
    }
    if (c.contains("angle")) {
      e.angle = r.quantity(c["angle"], p + "/angle", kAngle);
      ++placements;
    }
    if (placements != 1) r.fail(p, "give exactly one of interface, location, angle");
    if (!c.contains("depth_ratio")) r.fail(p + "/depth_ratio", "missing");
    e.depth_ratio = r.number(c["depth_ratio"], p + "/depth_ratio");
    if (c.contains("shape")) {
      try {
        e.shape = parse_shape(r.string(c["shape"], p + "/shape"));
      } catch (const std::invalid_argument& ex) {
        r.fail(p + "/shape", ex.what());
      }
    }
    out.push_back(e);
  }
  return out;
}

void read_solver(const Reader& r, const json& j, Scenario& s) {
  r.check_keys(j, "/solver", {"modes", "free_edge", "compliance_model", "omega_min", "omega_max",
                              "steps", "shape_samples", "oracle_nodes"});
  auto positive_int = [&](const char* key) {
    const json& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      r.fail(std::string("/solver/") + key, "expected a positive integer");
    }
    return v.get<long long>();
  };
  if (j.contains("modes")) s.modes = static_cast<int>(positive_int("modes"));
  if (j.contains("steps")) s.solve.steps = static_cast<int>(positive_int("steps"));
  if (j.contains("shape_samples")) s.solve.shape_samples = static_cast<int>(positive_int("shape_samples"));
  if (j.contains("oracle_nodes")) s.oracle_nodes = static_cast<std::size_t>(positive_int("oracle_nodes"));
  if (j.contains("omega_min")) s.solve.omega_min = r.number(j["omega_min"], "/solver/omega_min");
  if (j.contains("omega_max")) s.solve.omega_max = r.number(j["omega_max"], "/solver/omega_max");
  try {
    if (j.contains("free_edge")) s.options.free_edge = parse_free_edge(r.string(j["free_edge"], "/solver/free_edge"));
  } catch (const std::invalid_argument& ex) {
    r.fail("/solver/free_edge", ex.what());
  }
  try {
    if (j.contains("compliance_model")) {
      s.options.compliance = parse_compliance_model(r.string(j["compliance_model"], "/solver/compliance_model"));
    }
  } catch (const std::invalid_argument& ex) {
    r.fail("/solver/compliance_model", ex.what());
  }
  if (!(s.solve.omega_min > 0.0)) r.fail("/solver/omega_min", "must be positive");
  if (s.solve.omega_max != 0.0 && !(s.solve.omega_max > s.solve.omega_min)) {
    r.fail("/solver/omega_max", "must exceed omega_min (or be 0 for automatic)");
  }
}

/// Array of numbers, or {"from", "to", "step"} / {"from", "to", "count"}; "unit"
/// applies to every value.
std::vector<double> read_grid(const Reader& r, const json& j, const std::string& pointer,
                              const std::string& parameter) {
  const auto& units = units_for(parameter);
  double scale = 1.0;
  std::vector<double> raw;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) raw.push_back(r.number(j[i], pointer + "/" + std::to_string(i)));
  } else if (j.is_object()) {
    r.check_keys(j, pointer, {"from", "to", "step", "count", "unit", "values"});
    if (j.contains("unit")) {
      const std::string u = r.string(j["unit"], pointer + "/unit");
      const auto it = units.find(u);
      if (it == units.end()) r.fail(pointer + "/unit", "unit '" + u + "' does not fit parameter " + parameter);
      scale = it->second;
    }
    if (j.contains("values")) {
      const json& v = j["values"];
      if (!v.is_array()) r.fail(pointer + "/values", "expected an array");
      for (std::size_t i = 0; i < v.size(); ++i) {
        raw.push_back(r.number(v[i], pointer + "/values/" + std::to_string(i)));
      }
    } else {
      if (!j.contains("from") || !j.contains("to")) r.fail(pointer, "range needs from and to");
      const double from = r.number(j["from"], pointer + "/from");
      const double to = r.number(j["to"], pointer + "/to");
      if (j.contains("count")) {
        const json& c = j["count"];
        if (!c.is_number_integer() || c.get<long long>() < 1) r.fail(pointer + "/count", "expected a positive integer");
        const auto n = c.get<long long>();
        for (long long i = 0; i < n; ++i) {
          raw.push_back(n == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
      } else if (j.contains("step")) {
        const double step = r.number(j["step"], pointer + "/step");
        if (!(step > 0.0)) r.fail(pointer + "/step", "must be positive");
        const auto n = static_cast<long long>(std::floor((to - from) / step + 1e-9));
        for (long long i = 0; i <= n; ++i) raw.push_back(from + step * static_cast<double>(i));
      } else {
        r.fail(pointer, "range needs step or count");
      }
    }
  } else {
    r.fail(pointer, "expected an array or a range object");
  }
  for (double& v : raw) v *= scale;
  return raw;
}

SweepSpec read_sweep(const Reader& r, const json& j, const std::string& p) {
  r.check_keys(j, p, {"name", "parameter", "values", "family", "modes", "crack"});
  SweepSpec s;
  if (!j.contains("name")) r.fail(p + "/name", "missing");
  if (!j.contains("parameter")) r.fail(p + "/parameter", "missing");
  if (!j.contains("values")) r.fail(p + "/values", "missing");
  s.name = r.string(j["name"], p + "/name");
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) {
    r.fail(p + "/name", "must be a non-empty file name");
  }
  s.parameter = r.string(j["parameter"], p + "/parameter");
  s.values = read_grid(r, j["values"], p + "/values", s.parameter);
  if (j.contains("family")) {
    const json& f = j["family"];
    r.check_keys(f, p + "/family", {"parameter", "values"});
    if (!f.contains("parameter")) r.fail(p + "/family/parameter", "missing");
    if (!f.contains("values")) r.fail(p + "/family/values", "missing");
    s.family_parameter = r.string(f["parameter"], p + "/family/parameter");
    s.family_values = read_grid(r, f["values"], p + "/family/values", s.family_parameter);
  }
  if (j.contains("modes")) {
    if (!j["modes"].is_number_integer() || j["modes"].get<long long>() < 1) r.fail(p + "/modes", "expected a positive integer");
    s.modes = j["modes"].get<int>();
  }
  if (j.contains("crack")) {
    if (!j["crack"].is_number_unsigned()) r.fail(p + "/crack", "expected a crack index");
    s.crack = j["crack"].get<std::size_t>();
  }
  return s;
}

}  // namespace

BoundaryType parse_boundary(const std::string& name) {
  static const std::map<std::string, BoundaryType> table = {
      {"clamped_free", BoundaryType::ClampedFree},
      {"clamped_clamped", BoundaryType::ClampedClamped},
      {"ring", BoundaryType::PeriodicRing}};
  return lookup(table, name, "boundary");
}

FreeEdgeMode parse_free_edge(const std::string& name) {
  static const std::map<std::string, FreeEdgeMode> table = {
      {"consistent", FreeEdgeMode::Consistent}, {"paper_literal", FreeEdgeMode::PaperLiteral}};
  return lookup(table, name, "free edge mode");
}

ComplianceModel parse_compliance_model(const std::string& name) {
  static const std::map<std::string, ComplianceModel> table = {
      {"paper", ComplianceModel::Paper}, {"dimarogonas", ComplianceModel::Dimarogonas}};
  return lookup(table, name, "compliance model");
}

ShapeFunction parse_shape(const std::string& name) {
  static const std::map<std::string, ShapeFunction> table = {
      {"poly31_32", ShapeFunction::Poly31_32}, {"tada33", ShapeFunction::Tada33}};
  return lookup(table, name, "shape function");
}

ResolvedScenario resolve(const Scenario& scenario) {
  ResolvedScenario out;
  const ArchGeometry& base = scenario.geometry;
  std::vector<double> angles;
  for (const CrackEntry& c : scenario.cracks) {
    if (c.interface_index) {
      const std::size_t j = *c.interface_index;
      if (j < 1 || j + 1 >= base.interface_angles.size()) {
        throw ModelError("crack interface " + std::to_string(j) + " is not an interior step interface");
      }
      angles.push_back(base.interface_angles[j]);
    } else if (c.location) {
      angles.push_back(*c.location * base.central_angle);
    } else if (c.angle) {
      angles.push_back(*c.angle);
    } else {
      throw ModelError("crack has no placement");
    }
  }
  out.geometry = base;
  std::size_t index = 0;
  for (double a : angles) out.geometry = out.geometry.with_interface(a, &index);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    out.geometry.with_interface(angles[i], &index);
    out.cracks.push_back({index, scenario.cracks[i].depth_ratio, scenario.cracks[i].shape});
  }
  return out;
}

DimensionlessProblem make_problem(const Scenario& scenario) {
  const ResolvedScenario r = resolve(scenario);
  return build_problem(scenario.material, r.geometry, r.cracks, scenario.boundary, scenario.options);
}

void validate_sweep(const SweepSpec& s, const Scenario& scenario) {
  const std::string where = "sweep '" + s.name + "'";
  auto known = [](const std::string& p) {
    const auto& names = sweep_parameters();
    return std::find(names.begin(), names.end(), p) != names.end();
  };
  if (!known(s.parameter)) throw ConfigError("unknown parameter '" + s.parameter + "'", where);
  if (s.values.empty()) throw ConfigError("value grid is empty (grids non-empty)", where);
  if (!std::is_sorted(s.values.begin(), s.values.end(), std::less_equal<>()) ||
      std::adjacent_find(s.values.begin(), s.values.end()) != s.values.end()) {
    throw ConfigError("value grid must be strictly increasing", where);
  }
  if (!s.family_parameter.empty()) {
    if (!known(s.family_parameter)) throw ConfigError("unknown family parameter '" + s.family_parameter + "'", where);
    if (s.family_parameter == s.parameter) throw ConfigError("swept and family parameters must differ", where);
    if (s.family_values.empty()) throw ConfigError("family grid is empty (grids non-empty)", where);
    if (std::adjacent_find(s.family_values.begin(), s.family_values.end(), std::greater_equal<>()) !=
        s.family_values.end()) {
      throw ConfigError("family grid must be strictly increasing", where);
    }
  }
  for (const std::string& p : {s.parameter, s.family_parameter}) {
    const bool crack_param = p == "crack_depth_s" || p == "crack_location" || p == "shape_function";
    if (crack_param && s.crack >= scenario.cracks.size()) {
      throw ConfigError("parameter " + p + " needs crack " + std::to_string(s.crack) + " in the cracks section", where);
    }
  }
  if (s.modes < 1) throw ConfigError("modes must be positive", where);
}

Config parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(e.what(), "", line_at(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  const Reader r{text};
  r.check_keys(doc, "", {"material", "geometry", "cracks", "boundary", "solver", "sweeps"});
  Config c;
  if (doc.contains("material")) c.scenario.material = read_material(r, doc["material"]);
  if (doc.contains("geometry")) {
    c.scenario.geometry = read_geometry(r, doc["geometry"]);
  } else {
    c.scenario.geometry = ArchGeometry::uniform(110e-9, 1e-9, std::numbers::pi / 6.0, 5e-9);
  }
  if (doc.contains("cracks")) c.scenario.cracks = read_cracks(r, doc["cracks"]);
  if (doc.contains("boundary")) {
    try {
      c.scenario.boundary = parse_boundary(r.string(doc["boundary"], "/boundary"));
    } catch (const std::invalid_argument& ex) {
      r.fail("/boundary", ex.what());
    }
  }
  if (doc.contains("solver")) read_solver(r, doc["solver"], c.scenario);

  // Model-level validation against the resolved geometry.
  try {
    const ResolvedScenario res = resolve(c.scenario);
    const ValidationReport rep = validate(c.scenario.material, res.geometry, res.cracks, c.scenario.boundary);
    if (!rep.ok()) throw ConfigError(rep.summary(), "/");
  } catch (const ModelError& e) {
    throw ConfigError(e.what(), "/cracks", line_of(text, "/cracks"));
  }

  if (doc.contains("sweeps")) {
    const json& sw = doc["sweeps"];
    if (!sw.is_array()) r.fail("/sweeps", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < sw.size(); ++i) {
      const std::string p = "/sweeps/" + std::to_string(i);
      SweepSpec s = read_sweep(r, sw[i], p);
      try {
        validate_sweep(s, c.scenario);
      } catch (const ConfigError& e) {
        const std::size_t at = text.find("\"" + s.name + "\"", text.find("\"sweeps\""));
        throw ConfigError(e.what(), p, at == std::string::npos ? 0 : line_at(text, at));
      }
      if (!names.insert(s.name).second) r.fail(p + "/name", "duplicate sweep name '" + s.name + "'");
      c.sweeps.push_back(std::move(s));
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace arcfreq::cli

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcfreq/eigensolve.hpp"
#include "arcfreq/model.hpp"

namespace arcfreq::cli {

/// Malformed or invalid configuration. `field` is a JSON pointer such as
/// "/geometry/radius"; `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string field = {}, int line = 0);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// A crack placed by exactly one of: an existing step interface, a fraction of
/// the central angle, or an absolute angle.
struct CrackEntry {
  std::optional<std::size_t> interface_index;
  std::optional<double> location;  // fraction of beta, in (0, 1)
  std::optional<double> angle;     // rad
  double depth_ratio = 0.0;
  ShapeFunction shape = ShapeFunction::Poly31_32;
};

/// One physical configuration: everything needed to build a DimensionlessProblem.
struct Scenario {
  Material material;
  ArchGeometry geometry;  // steps only; crack interfaces are inserted by resolve()
  std::vector<CrackEntry> cracks;
  BoundaryType boundary = BoundaryType::ClampedFree;
  ModelOptions options;
  SolveOptions solve;
  int modes = 5;
  std::size_t oracle_nodes = 4000;
};

struct ResolvedScenario {
  ArchGeometry geometry;
  std::vector<CrackSpec> cracks;
};

/// Inserts crack interfaces into the step geometry.
ResolvedScenario resolve(const Scenario& scenario);

/// resolve + build_problem.
DimensionlessProblem make_problem(const Scenario& scenario);

struct SweepSpec {
  std::string name;
  std::string parameter;
  std::vector<double> values;  // SI / radians / fractions
  std::string family_parameter;  // empty: no family
  std::vector<double> family_values;
  int modes = 3;
  std::size_t crack = 0;  // crack entry targeted by crack_* parameters
};

inline const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names = {
      "thickness_h0", "crack_depth_s", "nonlocal_eta",      "crack_location",
      "radius_R",     "central_angle_beta", "shape_function"};
  return names;
}

/// Throws ConfigError on an unknown parameter, empty or non-increasing grids,
/// identical swept/family parameters, or crack parameters without a crack.
void validate_sweep(const SweepSpec& sweep, const Scenario& scenario);

struct Config {
  Scenario scenario;
  std::vector<SweepSpec> sweeps;
};

/// Parses a JSON document with sections material, geometry, cracks, boundary,
/// solver, sweeps. Quantities are plain SI numbers or {"value": v, "unit": u}.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

BoundaryType parse_boundary(const std::string& name);
FreeEdgeMode parse_free_edge(const std::string& name);
ComplianceModel parse_compliance_model(const std::string& name);
ShapeFunction parse_shape(const std::string& name);

}  // namespace arcfreq::cli

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "arcfreq/model.hpp"

namespace arcfreq::testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDeskBeta = kPi / 6.0;

inline ArchGeometry desk_geometry(double beta = kDeskBeta) {
  return ArchGeometry::uniform(110e-9, 1e-9, beta, 5e-9);
}

/// Uniform arch with eta_raw chosen so that eta_bar is exactly `eta_bar`.
inline Material material_for(double eta_bar, double radius = 110e-9) {
  Material m;
  m.nonlocal_length_sq = eta_bar * radius * radius;
  return m;
}

inline DimensionlessProblem uniform_problem(BoundaryType b, double beta, double eta_bar = 0.0,
                                            const ModelOptions& options = {}) {
  return build_problem(material_for(eta_bar), desk_geometry(beta), {}, b, options);
}

/// One crack of depth ratio s at fraction `location` of beta.
inline DimensionlessProblem cracked_problem(BoundaryType b, double beta, double location, double s,
                                            double eta_bar = 0.0, const ModelOptions& options = {},
                                            ShapeFunction shape = ShapeFunction::Poly31_32) {
  std::size_t idx = 0;
  const ArchGeometry g = desk_geometry(beta).with_interface(location * beta, &idx);
  return build_problem(material_for(eta_bar), g, {{idx, s, shape}}, b, options);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace arcfreq::testing

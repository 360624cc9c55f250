#include "arcfreq/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "arcfreq/fracture.hpp"

namespace arcfreq {

std::string to_string(BoundaryType b) {
  switch (b) {
    case BoundaryType::ClampedFree: return "clamped_free";
    case BoundaryType::ClampedClamped: return "clamped_clamped";
    case BoundaryType::PeriodicRing: return "periodic_ring";
  }
  return "?";
}

std::string to_string(ShapeFunction s) {
  return s == ShapeFunction::Poly31_32 ? "poly31_32" : "tada33";
}

std::string to_string(ComplianceModel m) {
  return m == ComplianceModel::Paper ? "paper" : "dimarogonas";
}

std::string to_string(FreeEdgeMode m) {
  return m == FreeEdgeMode::Consistent ? "consistent" : "paper_literal";
}

ArchGeometry ArchGeometry::uniform(double radius, double width, double central_angle,
                                   double thickness) {
  ArchGeometry g;
  g.radius = radius;
  g.width = width;
  g.central_angle = central_angle;
  g.interface_angles = {0.0, central_angle};
  g.thicknesses = {thickness};
  return g;
}

double ArchGeometry::moment_of_inertia(std::size_t segment) const {
  const double h = thicknesses.at(segment);
  return width * h * h * h / 12.0;
}

ArchGeometry ArchGeometry::with_interface(double angle, std::size_t* index, double tol) const {
  ArchGeometry g = *this;
  for (std::size_t j = 1; j + 1 < g.interface_angles.size(); ++j) {
    if (std::abs(g.interface_angles[j] - angle) <= tol) {
      if (index) *index = j;
      return g;
    }
  }
  if (!(angle > 0.0 && angle < central_angle)) {
    throw ModelError("interface angle must lie strictly inside (0, beta)");
  }
  auto it = std::upper_bound(g.interface_angles.begin(), g.interface_angles.end(), angle);
  const auto pos = static_cast<std::size_t>(it - g.interface_angles.begin());
  // pos-1 is the segment that contains `angle`
  g.interface_angles.insert(it, angle);
  g.thicknesses.insert(g.thicknesses.begin() + static_cast<std::ptrdiff_t>(pos - 1),
                       g.thicknesses[pos - 1]);
  if (index) *index = pos;
  return g;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate(const Material& m, const ArchGeometry& g,
                          const std::vector<CrackSpec>& cracks, BoundaryType boundary) {
  ValidationReport r;
  auto fail = [&](std::string msg) { r.violations.push_back(std::move(msg)); };

  if (!(m.youngs_modulus > 0.0)) fail("youngs_modulus must be positive");
  if (!(m.poisson_ratio >= 0.0 && m.poisson_ratio < 0.5)) fail("poisson_ratio must be in [0, 0.5)");
  if (!(m.density > 0.0)) fail("density must be positive");
  if (!(m.nonlocal_length_sq >= 0.0)) fail("nonlocal_length_sq must be non-negative");

  if (!(g.radius > 0.0)) fail("radius must be positive");
  if (!(g.width > 0.0)) fail("width must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(g.central_angle > 0.0 && g.central_angle <= two_pi * (1.0 + 1e-12))) {
    fail("central_angle must be in (0, 2 pi]");
  }
  if (g.thicknesses.empty()) {
    fail("at least one segment thickness is required");
  }
  for (std::size_t j = 0; j < g.thicknesses.size(); ++j) {
    if (!(g.thicknesses[j] > 0.0)) fail("thickness h_" + std::to_string(j) + " must be positive");
  }
  if (g.interface_angles.size() != g.thicknesses.size() + 1) {
    fail("interface_angles must have one more entry than thicknesses");
  } else {
    if (g.interface_angles.front() != 0.0) fail("alpha_0 must be 0");
    if (std::abs(g.interface_angles.back() - g.central_angle) > 1e-12 * g.central_angle) {
      fail("alpha_{n+1} must equal central_angle");
    }
    for (std::size_t j = 1; j < g.interface_angles.size(); ++j) {
      if (!(g.interface_angles[j] > g.interface_angles[j - 1])) {
        fail("interface angles must be strictly increasing");
        break;
      }
    }
  }

  const std::size_t n = g.thicknesses.size() - (g.thicknesses.empty() ? 0 : 1);
  for (const auto& c : cracks) {
    if (c.interface_index < 1 || c.interface_index > n) {
      fail("crack interface_index " + std::to_string(c.interface_index) +
           " does not address an interior interface");
    }
    if (!(c.depth_ratio >= 0.0)) fail("crack depth ratio must be non-negative");
    if (c.depth_ratio >= 1.0) fail("through-crack forbidden (depth ratio s must be < 1)");
  }
  for (std::size_t a = 0; a < cracks.size(); ++a) {
    for (std::size_t b = a + 1; b < cracks.size(); ++b) {
      if (cracks[a].interface_index == cracks[b].interface_index) {
        fail("two cracks share interface " + std::to_string(cracks[a].interface_index));
      }
    }
  }

  if (boundary == BoundaryType::PeriodicRing &&
      std::abs(g.central_angle - two_pi) > 1e-9 * two_pi) {
    fail("ring requires full circle (central_angle = 2 pi)");
  }
  return r;
}

double DimensionlessProblem::kappa_at(std::size_t interface_index) const {
  for (const auto& c : cracks) {
    if (c.interface_index == interface_index) return c.kappa;
  }
  return 0.0;
}

DimensionlessProblem nondimensionalize(const Material& m, const ArchGeometry& g,
                                       const std::vector<CrackSpec>& cracks,
                                       BoundaryType boundary, FreeEdgeMode free_edge) {
  const ValidationReport report = validate(m, g, cracks, boundary);
  if (!report.ok()) throw ModelError(report.summary());

  DimensionlessProblem p;
  const double h0 = g.thicknesses.front();
  p.eta_bar = m.nonlocal_length_sq / (g.radius * g.radius);
  p.boundary = boundary;
  p.free_edge = free_edge;
  p.slenderness = h0 / g.radius;
  p.segments.reserve(g.thicknesses.size());
  for (std::size_t j = 0; j < g.thicknesses.size(); ++j) {
    p.segments.push_back({g.interface_angles[j], g.interface_angles[j + 1], g.thicknesses[j] / h0});
  }
  p.segments.back().end = g.central_angle;

  for (const auto& c : cracks) {
    Crack k;
    k.interface_index = c.interface_index;
    k.angle = g.interface_angles[c.interface_index];
    k.depth_ratio = c.depth_ratio;
    k.shape = c.shape;
    k.ref_thickness_ratio = std::min(p.segments[c.interface_index - 1].thickness_ratio,
                                     p.segments[c.interface_index].thickness_ratio);
    p.cracks.push_back(k);
  }
  std::sort(p.cracks.begin(), p.cracks.end(),
            [](const Crack& a, const Crack& b) { return a.interface_index < b.interface_index; });
  return p;
}

DimensionlessProblem build_problem(const Material& material, const ArchGeometry& geometry,
                                   const std::vector<CrackSpec>& cracks, BoundaryType boundary,
                                   const ModelOptions& options) {
  DimensionlessProblem p = nondimensionalize(material, geometry, cracks, boundary, options.free_edge);
  fracture::assign_flexibilities(p, options.compliance);
  return p;
}

namespace {
double frequency_scale(const Material& m, const ArchGeometry& g) {
  // omega = Omega * scale
  return g.thicknesses.front() / (g.radius * g.radius * std::sqrt(12.0 * m.density / m.youngs_modulus));
}
}  // namespace

double to_rad_per_s(double omega_dimensionless, const Material& material,
                    const ArchGeometry& geometry) {
  return omega_dimensionless * frequency_scale(material, geometry);
}

double to_dimensionless(double omega_rad_per_s, const Material& material,
                        const ArchGeometry& geometry) {
  return omega_rad_per_s / frequency_scale(material, geometry);
}

}  // namespace arcfreq

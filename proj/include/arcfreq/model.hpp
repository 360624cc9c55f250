#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcfreq {

/// Raised when physical input violates a model invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BoundaryType { ClampedFree, ClampedClamped, PeriodicRing };

/// Crack shape-function family used in the compliance integrals.
enum class ShapeFunction {
  Poly31_32,  // F1/F2 quartic pair
  Tada33,     // tangent form, used for both entries
};

enum class ComplianceModel { Paper, Dimarogonas };

/// How the moment condition at a free edge carries the nonlocal term.
enum class FreeEdgeMode {
  Consistent,    // X'' + (1 + A eta) X = 0, same operator as the interior moment
  PaperLiteral,  // X'' + (1 + A) X = 0
};

std::string to_string(BoundaryType b);
std::string to_string(ShapeFunction s);
std::string to_string(ComplianceModel m);
std::string to_string(FreeEdgeMode m);

struct Material {
  double youngs_modulus = 7.0e11;   // Pa
  double poisson_ratio = 0.3;
  double density = 10.0;            // kg/m^3
  double nonlocal_length_sq = 0.0;  // (e0 a)^2, m^2
};

/// Stepped circular arch. Segment j spans [interface_angles[j], interface_angles[j+1]]
/// and has thickness thicknesses[j].
struct ArchGeometry {
  double radius = 110e-9;  // m
  double width = 1e-9;     // m
  double central_angle = 0.0;
  std::vector<double> interface_angles;  // alpha_0 = 0 ... alpha_{n+1} = beta
  std::vector<double> thicknesses;       // h_0 ... h_n

  static ArchGeometry uniform(double radius, double width, double central_angle,
                              double thickness);

  std::size_t segment_count() const { return thicknesses.size(); }
  double moment_of_inertia(std::size_t segment) const;

  /// Returns a copy with an interface at `angle`, splitting the segment that
  /// contains it (both halves keep its thickness). If an interface already sits
  /// within `tol` of `angle` the geometry is returned unchanged. `index`
  /// receives the interface index (1..n).
  ArchGeometry with_interface(double angle, std::size_t* index, double tol = 1e-12) const;
};

struct CrackSpec {
  std::size_t interface_index = 1;  // 1..n
  double depth_ratio = 0.0;         // s = c/h, reference thickness min(h_{j-1}, h_j)
  ShapeFunction shape = ShapeFunction::Poly31_32;
};

struct ModelOptions {
  FreeEdgeMode free_edge = FreeEdgeMode::Consistent;
  ComplianceModel compliance = ComplianceModel::Paper;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const Material& material, const ArchGeometry& geometry,
                          const std::vector<CrackSpec>& cracks, BoundaryType boundary);

struct Segment {
  double start = 0.0;  // rad
  double end = 0.0;    // rad
  double thickness_ratio = 1.0;  // h_j / h_0
  double length() const { return end - start; }
};

struct Crack {
  std::size_t interface_index = 1;  // segments interface_index-1 | interface_index
  double angle = 0.0;
  double depth_ratio = 0.0;
  ShapeFunction shape = ShapeFunction::Poly31_32;
  double ref_thickness_ratio = 1.0;  // min neighbouring t_j
  double kappa = 0.0;                // filled by fracture::assign_flexibilities
};

/// Nondimensional problem consumed by the solvers. Immutable after construction.
struct DimensionlessProblem {
  double eta_bar = 0.0;
  std::vector<Segment> segments;
  std::vector<Crack> cracks;
  BoundaryType boundary = BoundaryType::ClampedFree;
  FreeEdgeMode free_edge = FreeEdgeMode::Consistent;
  double slenderness = 0.0;  // h_0 / R

  double central_angle() const { return segments.back().end; }
  std::size_t interface_count() const { return segments.size() - 1; }
  /// kappa at interface j (1..n), 0 for artificial interfaces.
  double kappa_at(std::size_t interface_index) const;
};

/// Throws ModelError listing every violation when validation fails.
DimensionlessProblem nondimensionalize(const Material& material, const ArchGeometry& geometry,
                                       const std::vector<CrackSpec>& cracks, BoundaryType boundary,
                                       FreeEdgeMode free_edge = FreeEdgeMode::Consistent);

/// validate + nondimensionalize + crack flexibilities.
DimensionlessProblem build_problem(const Material& material, const ArchGeometry& geometry,
                                   const std::vector<CrackSpec>& cracks, BoundaryType boundary,
                                   const ModelOptions& options = {});

/// Omega = omega R^2 sqrt(12 rho / E) / h_0.
double to_rad_per_s(double omega_dimensionless, const Material& material,
                    const ArchGeometry& geometry);
double to_dimensionless(double omega_rad_per_s, const Material& material,
                        const ArchGeometry& geometry);

}  // namespace arcfreq

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arcfreq/lu.hpp"
#include "arcfreq/model.hpp"
#include "arcfreq/segment.hpp"

namespace arcfreq {

class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A block of condition rows over the full 4(n+1) coefficient vector.
struct ConditionRows {
  Eigen::MatrixXd entries;
  std::vector<std::string> labels;
};

/// Square homogeneous system for the segment coefficients C_{1j}..C_{4j}.
/// Columns 4j..4j+3 belong to segment j; basis functions are evaluated at the
/// segment-local angle phi - alpha_j.
struct GlobalSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd row_scale;  // applied: matrix = diag(row_scale) * raw
  std::vector<std::string> row_labels;
  std::vector<SegmentParams> params;
  std::vector<BasisScaling> basis;  // per segment, see assembly_basis
  double log_jacobian = 0.0;        // sum of exponential_log_jacobian over Exponential segments
};

std::vector<SegmentParams> segment_params(double omega, const DimensionlessProblem& problem);

/// Exponential once mu L exceeds kExponentialSwitch, Normalized otherwise. The
/// change of basis has positive determinant, so det sign is unaffected and
/// log|D| is corrected by GlobalSystem::log_jacobian.
inline constexpr double kExponentialSwitch = 2.0;
BasisScaling assembly_basis(const SegmentParams& p, double segment_length);

/// The four boundary rows (clamp/free/clamp-clamp). For PeriodicRing the closure
/// is an interface between the last and first segment; see closure_rows.
ConditionRows boundary_rows(const DimensionlessProblem& problem,
                            const std::vector<SegmentParams>& params);

/// Continuity/jump rows at interface j (1..n): [X] = 0, [X'] = theta,
/// [M] = 0 and [dM/dphi] = 0, with M ~ t^3 (X'' + (1 + A eta) X).
ConditionRows interface_rows(std::size_t j, const DimensionlessProblem& problem,
                             const std::vector<SegmentParams>& params, double kappa);

/// Ring closure at phi = 0 == 2 pi (last segment end against first segment start).
ConditionRows closure_rows(const DimensionlessProblem& problem,
                           const std::vector<SegmentParams>& params);

/// Assembled system; rows equilibrated to unit max-norm.
GlobalSystem build_system(double omega, const DimensionlessProblem& problem);

/// Sign and log-magnitude of det(GlobalSystem(omega)), expressed in the
/// Normalized basis throughout (row equilibration still applied).
LogDeterminant determinant(double omega, const DimensionlessProblem& problem);

}  // namespace arcfreq

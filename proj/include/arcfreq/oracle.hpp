#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arcfreq/model.hpp"

namespace arcfreq::oracle {

inline constexpr std::size_t kMinIntervals = 200;
inline constexpr std::size_t kDenseLimit = 1200;

/// Uniform angle grid over [0, beta] with N intervals. Interfaces are snapped to
/// grid nodes. Each segment carries two ghost nodes at either end.
struct FdMesh {
  std::size_t intervals = 0;
  double spacing = 0.0;
  std::vector<std::size_t> interface_nodes;  // alpha_0 .. alpha_{n+1} on the grid

  static FdMesh build(const DimensionlessProblem& problem, std::size_t intervals);
};

enum class FdMethod { Auto, Dense, ShiftInvertArnoldi };

struct FdOptions {
  FdMethod method = FdMethod::Auto;
  double shift = -0.37;  // sigma in (K - sigma M)^-1 M, in units of Omega^2
  double omega_floor = 1e-3;
  double complex_tol = 1e-8;
};

struct FdResult {
  std::vector<double> omegas;  // ascending, repeated eigenvalues kept
  std::vector<std::string> diagnostics;
  std::size_t complex_discarded = 0;
};

/// Second-order finite-difference discretization of
///   X'''' + (2 + A eta) X'' + (1 - A) X = 0,   A = Omega^2 / t^2
/// with the same boundary, continuity and crack jump conditions as the
/// determinant path, solved as K x = Omega^2 M x for the k smallest Omega > floor.
FdResult fd_eigen(const DimensionlessProblem& problem, std::size_t intervals, std::size_t k,
                  const FdOptions& options = {});

}  // namespace arcfreq::oracle

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arcfreq/model.hpp"
#include "arcfreq/segment.hpp"

namespace arcfreq {

enum class Execution { Serial, Parallel };

enum class RootKind { SignChange, Tangential };

const char* to_string(RootKind k);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  RootKind kind = RootKind::SignChange;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<std::string> warnings;
};

/// Sign and log|D| sampled on a grid.
struct DeterminantSamples {
  std::vector<double> omega;
  std::vector<int> sign;
  std::vector<double> log_abs;
};

/// Evaluates D on `grid`. The parallel kernel must return bit-identical results
/// to the serial one.
DeterminantSamples sample_determinant(const DimensionlessProblem& problem,
                                      const std::vector<double>& grid,
                                      Execution exec = Execution::Parallel);

/// Brackets sign changes of D on [omega_min, omega_max] and flags local minima of
/// |D| as tangential candidates. Intervals next to a bracket are re-sampled at
/// half step once.
ScanResult scan(const DimensionlessProblem& problem, double omega_min, double omega_max,
                double step, Execution exec = Execution::Parallel);

struct Root {
  double omega = 0.0;
  RootKind kind = RootKind::SignChange;
  int multiplicity = 1;
};

struct RefineResult {
  std::vector<Root> roots;  // empty when a tangential candidate is rejected
  std::string diagnostic;
};

/// Relative tolerance for bisection, |interval| <= rel_tol * omega.
inline constexpr double kRefineRelTol = 1e-10;
/// A tangential candidate is accepted when min|D| sits this many decades below
/// the bracket endpoints.
inline constexpr double kTangentialDepthDecades = 6.0;

RefineResult refine(const DimensionlessProblem& problem, const Bracket& bracket,
                    double rel_tol = kRefineRelTol);

struct ModeResult {
  int index = 0;  // 1-based
  double omega = 0.0;
  RootKind kind = RootKind::SignChange;
  int multiplicity = 1;
  std::vector<std::array<double, 4>> coefficients;  // per segment, in the assembly_basis of that segment
  std::vector<double> shape_angle;
  std::vector<double> shape_value;  // max |X| = 1
};

struct SolveOptions {
  double omega_min = 1e-3;
  double omega_max = 0.0;  // 0: grow the ceiling until k roots are found
  double omega_cap = 1e6;
  int steps = 2000;        // step = (omega_max - omega_min) / steps
  int shape_samples = 201;
  Execution exec = Execution::Parallel;
};

struct ModeSet {
  std::vector<ModeResult> modes;
  std::vector<std::string> diagnostics;
  bool complete = false;
};

/// First k distinct roots (tangential roots carry multiplicity 2) with mode shapes.
ModeSet modes(const DimensionlessProblem& problem, int k, const SolveOptions& options = {});

/// Frequencies only, repeated by multiplicity; convenient for oracle comparison.
std::vector<double> expand_multiplicity(const std::vector<ModeResult>& modes);

/// X^(order)(phi) of a mode from its coefficients. At an interface `from_right`
/// selects the right-hand limit.
double mode_derivative(const DimensionlessProblem& problem, const ModeResult& mode, double phi,
                       int order, bool from_right = false);

}  // namespace arcfreq

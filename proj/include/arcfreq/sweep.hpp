#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arcfreq/config.hpp"
#include "arcfreq/eigensolve.hpp"

namespace arcfreq::cli {

/// Sets one named parameter on a copy of the scenario.
///   thickness_h0        every step thickness scaled so that h_0 = value (m)
///   crack_depth_s       depth ratio of crack `crack`
///   nonlocal_eta        (e0 a)^2 in m^2
///   crack_location      position of crack `crack` as a fraction of beta
///   radius_R            R in m
///   central_angle_beta  beta in rad; step interfaces keep their fraction of beta
///   shape_function      0 = poly31_32, 1 = tada33, for crack `crack`
Scenario apply_parameter(Scenario scenario, const std::string& parameter, double value,
                         std::size_t crack = 0);

struct SweepRow {
  double swept_value = 0.0;
  std::optional<double> family_value;
  int mode_index = 0;
  double omega = 0.0;
  double omega_rad_per_s = 0.0;
  RootKind kind = RootKind::SignChange;
};

struct SweepFailure {
  double swept_value = 0.0;
  std::optional<double> family_value;
  std::string message;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;  // ordered by family, swept value, mode
  std::vector<SweepFailure> failures;
};

/// Solves every (family, value) point. Points run in parallel for
/// Execution::Parallel; each point's scan is serial, so the rows do not depend
/// on the schedule.
SweepOutcome run_sweep(const Scenario& scenario, const SweepSpec& sweep,
                       Execution exec = Execution::Parallel);

/// "%.12g" formatting used by every CSV writer.
std::string format_number(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

std::string describe_point(const std::string& sweep, const std::string& parameter, double value,
                           const std::string& family_parameter, std::optional<double> family);

}  // namespace arcfreq::cli

#include "arcfreq/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

namespace arcfreq::cli {

Scenario apply_parameter(Scenario s, const std::string& parameter, double value, std::size_t crack) {
  auto crack_ref = [&]() -> CrackEntry& {
    if (crack >= s.cracks.size()) {
      throw ConfigError("parameter " + parameter + " needs crack " + std::to_string(crack));
    }
    return s.cracks[crack];
  };
  if (parameter == "thickness_h0") {
    const double f = value / s.geometry.thicknesses.front();
    for (double& h : s.geometry.thicknesses) h *= f;
  } else if (parameter == "crack_depth_s") {
    crack_ref().depth_ratio = value;
  } else if (parameter == "nonlocal_eta") {
    s.material.nonlocal_length_sq = value;
  } else if (parameter == "crack_location") {
    CrackEntry& c = crack_ref();
    c.interface_index.reset();
    c.angle.reset();
    c.location = value;
  } else if (parameter == "radius_R") {
    s.geometry.radius = value;
  } else if (parameter == "central_angle_beta") {
    const double f = value / s.geometry.central_angle;
    for (double& a : s.geometry.interface_angles) a *= f;
    s.geometry.interface_angles.back() = value;
    s.geometry.central_angle = value;
    for (CrackEntry& c : s.cracks) {
      if (c.angle) *c.angle *= f;
    }
  } else if (parameter == "shape_function") {
    crack_ref().shape = value < 0.5 ? ShapeFunction::Poly31_32 : ShapeFunction::Tada33;
  } else {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
  return s;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string describe_point(const std::string& sweep, const std::string& parameter, double value,
                           const std::string& family_parameter, std::optional<double> family) {
  std::string s = "sweep '" + sweep + "' at " + parameter + " = " + format_number(value);
  if (family) s += ", " + family_parameter + " = " + format_number(*family);
  return s;
}

namespace {

struct Point {
  double value = 0.0;
  std::optional<double> family;
};

struct PointResult {
  std::vector<SweepRow> rows;
  std::string error;
};

PointResult solve_point(const Scenario& base, const SweepSpec& sweep, const Point& pt) {
  PointResult out;
  try {
    Scenario s = base;
    if (pt.family) s = apply_parameter(s, sweep.family_parameter, *pt.family, sweep.crack);
    s = apply_parameter(s, sweep.parameter, pt.value, sweep.crack);
    const ResolvedScenario r = resolve(s);
    const DimensionlessProblem problem =
        build_problem(s.material, r.geometry, r.cracks, s.boundary, s.options);
    SolveOptions opts = s.solve;
    opts.exec = Execution::Serial;
    opts.shape_samples = 2;
    const ModeSet set = modes(problem, sweep.modes, opts);
    for (const ModeResult& m : set.modes) {
      out.rows.push_back({pt.value, pt.family, m.index, m.omega,
                          to_rad_per_s(m.omega, s.material, r.geometry), m.kind});
    }
    if (!set.complete) {
      out.error = "found " + std::to_string(set.modes.size()) + " of " + std::to_string(sweep.modes) + " modes";
      for (const auto& d : set.diagnostics) out.error += "; " + d;
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

SweepOutcome run_sweep(const Scenario& scenario, const SweepSpec& sweep, Execution exec) {
  std::vector<Point> points;
  if (sweep.family_parameter.empty()) {
    for (double v : sweep.values) points.push_back({v, std::nullopt});
  } else {
    for (double f : sweep.family_values) {
      for (double v : sweep.values) points.push_back({v, f});
    }
  }

  std::vector<PointResult> results(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] = solve_point(scenario, sweep, points[static_cast<std::size_t>(i)]);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] = solve_point(scenario, sweep, points[static_cast<std::size_t>(i)]);
    }
  }

  SweepOutcome out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.rows.insert(out.rows.end(), results[i].rows.begin(), results[i].rows.end());
    if (!results[i].error.empty()) {
      out.failures.push_back({points[i].value, points[i].family, results[i].error});
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "swept_value,family_value,mode_index,omega_dimensionless,omega_rad_per_s,root_kind\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.swept_value) << ','
        << (r.family_value ? format_number(*r.family_value) : std::string()) << ','
        << r.mode_index << ',' << format_number(r.omega) << ',' << format_number(r.omega_rad_per_s)
        << ',' << to_string(r.kind) << '\n';
  }
}

}  // namespace arcfreq::cli

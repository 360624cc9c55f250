#include "arcfreq/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "arcfreq/oracle.hpp"

namespace arcfreq::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::vector<double> first_modes(const DimensionlessProblem& p, int k, Execution exec) {
  SolveOptions opts;
  opts.exec = exec;
  opts.shape_samples = 2;
  const ModeSet set = modes(p, k, opts);
  if (!set.complete) {
    std::string msg = "found " + std::to_string(set.modes.size()) + " of " + std::to_string(k) + " modes";
    for (const auto& d : set.diagnostics) msg += "; " + d;
    throw std::runtime_error(msg);
  }
  std::vector<double> out;
  for (const auto& m : set.modes) out.push_back(m.omega);
  return out;
}

}  // namespace

Check ratio_check(const std::string& label, double computed, double expected, double rel_tol) {
  Check c;
  c.label = label;
  const double rel = computed / expected - 1.0;
  c.pass = std::abs(rel) <= rel_tol;
  c.detail = "computed " + fmt("%.6g", computed) + ", expected " + fmt("%.6g", expected) +
             " (deviation " + fmt("%+.2f", 100.0 * rel) + "%, limit " + fmt("%.2g", 100.0 * rel_tol) + "%)";
  return c;
}

Table1Result compute_table1(const ModelOptions& options, Execution exec) {
  Table1Result t;
  const ArchGeometry g = ArchGeometry::uniform(110e-9, 1e-9, std::numbers::pi / 6.0, 5e-9);
  for (double eta : reference::kTable1Eta) {
    Material m;
    m.nonlocal_length_sq = eta * 1e-18;
    const DimensionlessProblem p = build_problem(m, g, {}, BoundaryType::ClampedFree, options);
    const auto w = first_modes(p, 2, exec);
    t.eta_nm2.push_back(eta);
    t.mode1.push_back(w[0]);
    t.mode2.push_back(w[1]);
  }
  return t;
}

std::vector<Check> table1_checks(const Table1Result& t) {
  using namespace reference;
  std::vector<Check> out;
  for (std::size_t i = 1; i < t.mode1.size(); ++i) {
    const double r = t.mode1[i] / t.mode1[0];
    out.push_back(ratio_check("mode 1 ratio at eta = " + fmt("%g", t.eta_nm2[i]), r,
                              kTable1Mode1[i] / kTable1Mode1[0], 0.10));
  }
  Check mono{"mode 1 strictly decreasing in eta", strictly_decreasing(t.mode1), ""};
  for (double w : t.mode1) mono.detail += fmt("%.10g ", w);
  out.push_back(mono);
  out.push_back(ratio_check("mode 2 ratio at eta = 4", t.mode2.back() / t.mode2.front(),
                            kTable1Mode2.back() / kTable1Mode2.front(), 0.10));
  return out;
}

DimensionlessProblem table2_ring(double eta_bar, bool defect, const ModelOptions& options) {
  const double radius = 110e-9;
  Material m;
  m.nonlocal_length_sq = eta_bar * radius * radius;
  ArchGeometry g = ArchGeometry::uniform(radius, 1e-9, 2.0 * std::numbers::pi, 5e-9);
  std::vector<CrackSpec> cracks;
  if (defect) {
    std::size_t idx = 0;
    g = g.with_interface(std::numbers::pi, &idx);
    cracks.push_back({idx, 0.5, ShapeFunction::Poly31_32});
  }
  return build_problem(m, g, cracks, BoundaryType::PeriodicRing, options);
}

std::vector<double> ring_ladder(const DimensionlessProblem& ring, std::size_t count, Execution exec) {
  SolveOptions opts;
  opts.exec = exec;
  opts.shape_samples = 2;
  const ModeSet set = modes(ring, static_cast<int>(2 * count + 1), opts);
  const std::vector<double> expanded = expand_multiplicity(set.modes);
  std::vector<double> out;
  for (std::size_t i = 1; i < expanded.size() && out.size() < count; i += 2) out.push_back(expanded[i]);
  if (out.size() < count) throw std::runtime_error("ring ladder: not enough roots");
  return out;
}

Table2Result compute_table2(const ModelOptions& options, Execution exec) {
  Table2Result t;
  for (double a : reference::kTable2A) {
    t.a.push_back(a);
    t.intact.push_back(ring_ladder(table2_ring(a * a, false, options), 5, exec));
    t.defect.push_back(ring_ladder(table2_ring(a * a, true, options), 5, exec));
  }
  return t;
}

std::vector<Check> table2_checks(const Table2Result& t) {
  using namespace reference;
  std::vector<Check> out;
  for (std::size_t ai = 0; ai < t.a.size(); ++ai) {
    const auto& w = t.intact[ai];
    const auto& ref = kTable2Intact[ai];
    for (std::size_t m = 1; m < 3; ++m) {
      out.push_back(ratio_check("a = " + fmt("%g", t.a[ai]) + " ladder ratio mode " + std::to_string(m + 1) + "/1",
                                w[m] / w[0], ref[m] / ref[0], 0.10));
    }
    Check defect{"a = " + fmt("%g", t.a[ai]) + " defect lowers mode 1", t.defect[ai][0] < w[0],
                 fmt("defect %.10g", t.defect[ai][0]) + fmt(" vs intact %.10g", w[0])};
    out.push_back(defect);
  }
  for (std::size_t ai = 1; ai < t.a.size(); ++ai) {
    bool below = true;
    std::string detail;
    for (std::size_t m = 0; m < t.intact[ai].size(); ++m) {
      below = below && t.intact[ai][m] < t.intact[ai - 1][m] && t.defect[ai][m] < t.defect[ai - 1][m];
      detail += fmt("%.6g", t.intact[ai][m]) + "<" + fmt("%.6g ", t.intact[ai - 1][m]);
    }
    out.push_back({"larger a softens every mode (intact and defect)", below, detail});
  }
  return out;
}

std::string format_table1(const Table1Result& t) {
  std::ostringstream os;
  os << "eta[nm^2]  Omega1        Omega1/Omega1(0)  ref ratio  Omega2        Omega2/Omega2(0)  ref ratio\n";
  for (std::size_t i = 0; i < t.eta_nm2.size(); ++i) {
    os << fmt("%-10g ", t.eta_nm2[i]) << fmt("%-13.8g ", t.mode1[i])
       << fmt("%-17.6f ", t.mode1[i] / t.mode1[0])
       << fmt("%-10.4f ", reference::kTable1Mode1[i] / reference::kTable1Mode1[0])
       << fmt("%-13.8g ", t.mode2[i]) << fmt("%-17.6f ", t.mode2[i] / t.mode2[0])
       << fmt("%.4f", reference::kTable1Mode2[i] / reference::kTable1Mode2[0]) << '\n';
  }
  return os.str();
}

std::string format_table2(const Table2Result& t) {
  std::ostringstream os;
  for (std::size_t ai = 0; ai < t.a.size(); ++ai) {
    os << "a = " << t.a[ai] << " (eta_bar = " << t.a[ai] * t.a[ai] << ")\n";
    os << "mode  intact        ratio     ref ratio  defect        ref defect ratio\n";
    for (std::size_t m = 0; m < t.intact[ai].size(); ++m) {
      os << fmt("%-5g ", static_cast<double>(m + 1)) << fmt("%-13.8g ", t.intact[ai][m])
         << fmt("%-9.4f ", t.intact[ai][m] / t.intact[ai][0])
         << fmt("%-10.4f ", reference::kTable2Intact[ai][m] / reference::kTable2Intact[ai][0])
         << fmt("%-13.8g ", t.defect[ai][m])
         << fmt("%.4f", reference::kTable2Defect[ai][m] / reference::kTable2Intact[ai][m]) << '\n';
    }
  }
  return os.str();
}

OracleCheckReport oracle_check(const DimensionlessProblem& problem, std::size_t intervals, int k,
                               bool negate_kappa) {
  OracleCheckReport r;
  r.cracked = std::any_of(problem.cracks.begin(), problem.cracks.end(),
                          [](const Crack& c) { return c.kappa != 0.0; });
  r.threshold = r.cracked ? 0.005 : 0.002;

  // Built before any solver runs so that an invalid N is reported first.
  oracle::FdMesh::build(problem, intervals);

  DimensionlessProblem det_problem = problem;
  if (negate_kappa) {
    for (Crack& c : det_problem.cracks) c.kappa = -c.kappa;
  }
  SolveOptions opts;
  opts.shape_samples = 2;
  const ModeSet set = modes(det_problem, k, opts);
  std::vector<double> det = expand_multiplicity(set.modes);
  r.diagnostics.insert(r.diagnostics.end(), set.diagnostics.begin(), set.diagnostics.end());
  const oracle::FdResult fd = oracle::fd_eigen(problem, intervals, static_cast<std::size_t>(k));
  r.diagnostics.insert(r.diagnostics.end(), fd.diagnostics.begin(), fd.diagnostics.end());

  const std::size_t n = std::min({static_cast<std::size_t>(k), det.size(), fd.omegas.size()});
  r.pass = n == static_cast<std::size_t>(k);
  if (!r.pass) {
    r.diagnostics.push_back("compared only " + std::to_string(n) + " of " + std::to_string(k) + " modes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    OracleCheckRow row;
    row.mode = static_cast<int>(i + 1);
    row.determinant = det[i];
    row.finite_difference = fd.omegas[i];
    row.relative = std::abs(det[i] - fd.omegas[i]) / std::abs(fd.omegas[i]);
    row.pass = row.relative <= r.threshold;
    r.pass = r.pass && row.pass;
    r.rows.push_back(row);
  }
  return r;
}

std::string format_oracle_check(const OracleCheckReport& r) {
  std::ostringstream os;
  os << "mode  determinant        finite-difference  rel. diff    limit\n";
  for (const auto& row : r.rows) {
    os << fmt("%-5g ", static_cast<double>(row.mode)) << fmt("%-18.10g ", row.determinant)
       << fmt("%-18.10g ", row.finite_difference) << fmt("%-12.3e ", row.relative)
       << fmt("%.3g", r.threshold) << (row.pass ? "  ok" : "  MISMATCH") << '\n';
  }
  for (const auto& d : r.diagnostics) os << "note: " << d << '\n';
  os << (r.pass ? "PASS" : "FAIL") << " (" << (r.cracked ? "cracked" : "crack-free") << ", threshold "
     << fmt("%.3g", 100.0 * r.threshold) << "%)\n";
  return os.str();
}

}  // namespace arcfreq::cli

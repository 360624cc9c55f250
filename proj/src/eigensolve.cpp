#include "arcfreq/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "arcfreq/assembly.hpp"

namespace arcfreq {

namespace {

constexpr double kLn10 = 2.302585092994046;
// Minimal dip (in decades) for a sampled local minimum of |D| to be refined.
constexpr double kCandidateDip = 0.05;
// Roots closer than this (relative) are one tangential root seen twice.
constexpr double kMergeRel = 1e-7;
constexpr int kSubsamples = 64;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void sample_serial(const DimensionlessProblem& problem, const std::vector<double>& grid,
                   DeterminantSamples& out) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const LogDeterminant d = determinant(grid[i], problem);
    out.sign[i] = d.sign;
    out.log_abs[i] = d.log_abs;
  }
}

void sample_parallel(const DimensionlessProblem& problem, const std::vector<double>& grid,
                     DeterminantSamples& out) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const LogDeterminant d = determinant(grid[static_cast<std::size_t>(i)], problem);
      out.sign[static_cast<std::size_t>(i)] = d.sign;
      out.log_abs[static_cast<std::size_t>(i)] = d.log_abs;
    } catch (...) {
#pragma omp critical(arcfreq_scan_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / step - 1e-9)));
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / n;
  g.back() = hi;
  return g;
}

std::vector<Bracket> brackets_from_samples(const DeterminantSamples& s) {
  std::vector<Bracket> out;
  const std::size_t n = s.omega.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (s.sign[i] == 0) {
      out.push_back({s.omega[i], s.omega[i], RootKind::SignChange});
      continue;
    }
    if (i + 1 < n && s.sign[i + 1] != 0 && s.sign[i] != s.sign[i + 1]) {
      out.push_back({s.omega[i], s.omega[i + 1], RootKind::SignChange});
    }
    if (i > 0 && i + 1 < n && s.sign[i - 1] == s.sign[i] && s.sign[i] == s.sign[i + 1]) {
      const double dip = std::min(s.log_abs[i - 1], s.log_abs[i + 1]) - s.log_abs[i];
      if (dip > kCandidateDip * kLn10) {
        out.push_back({s.omega[i - 1], s.omega[i + 1], RootKind::Tangential});
      }
    }
  }
  return out;
}

void merge_samples(DeterminantSamples& base, const DeterminantSamples& extra) {
  DeterminantSamples merged;
  const std::size_t total = base.omega.size() + extra.omega.size();
  merged.omega.reserve(total);
  merged.sign.reserve(total);
  merged.log_abs.reserve(total);
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < base.omega.size() || b < extra.omega.size()) {
    const bool take_a = b >= extra.omega.size() ||
                        (a < base.omega.size() && base.omega[a] <= extra.omega[b]);
    const DeterminantSamples& src = take_a ? base : extra;
    const std::size_t k = take_a ? a++ : b++;
    merged.omega.push_back(src.omega[k]);
    merged.sign.push_back(src.sign[k]);
    merged.log_abs.push_back(src.log_abs[k]);
  }
  base = std::move(merged);
}

/// Halves the intervals touching every detected bracket once.
void refine_samples_near_brackets(const DimensionlessProblem& problem, DeterminantSamples& s,
                                  Execution exec) {
  const std::vector<Bracket> first = brackets_from_samples(s);
  if (first.empty()) return;
  std::vector<char> mark(s.omega.size(), 0);
  for (const Bracket& b : first) {
    const auto lo = std::lower_bound(s.omega.begin(), s.omega.end(), b.lo) - s.omega.begin();
    const auto hi = std::lower_bound(s.omega.begin(), s.omega.end(), b.hi) - s.omega.begin();
    const auto from = std::max<std::ptrdiff_t>(0, lo - 1);
    const auto to = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(s.omega.size()) - 2, hi);
    for (auto i = from; i <= to; ++i) mark[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < s.omega.size(); ++i) {
    if (mark[i]) mids.push_back(0.5 * (s.omega[i] + s.omega[i + 1]));
  }
  merge_samples(s, sample_determinant(problem, mids, exec));
}

void add_spacing_warnings(const std::vector<Bracket>& brackets, double step,
                          std::vector<std::string>& warnings) {
  for (std::size_t i = 1; i < brackets.size(); ++i) {
    const double a = 0.5 * (brackets[i - 1].lo + brackets[i - 1].hi);
    const double b = 0.5 * (brackets[i].lo + brackets[i].hi);
    if (b - a < 2.0 * step) {
      warnings.push_back("adjacent roots near Omega = " + fmt(a) + " and " + fmt(b) +
                         " are closer than 2*step; possible missed root");
    }
  }
}

double bisect(const DimensionlessProblem& problem, double lo, double hi, double rel_tol) {
  int s_lo = determinant(lo, problem).sign;
  if (s_lo == 0) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid)) break;
    const int s = determinant(mid, problem).sign;
    if (s == 0) return mid;
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_min(const DimensionlessProblem& problem, double lo, double hi, double rel_tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double x) { return determinant(x, problem).log_abs; };
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 300 && (b - a) > rel_tol * std::abs(0.5 * (a + b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

const char* to_string(RootKind k) {
  return k == RootKind::SignChange ? "sign-change" : "tangential";
}

DeterminantSamples sample_determinant(const DimensionlessProblem& problem,
                                      const std::vector<double>& grid, Execution exec) {
  DeterminantSamples out;
  out.omega = grid;
  out.sign.assign(grid.size(), 0);
  out.log_abs.assign(grid.size(), 0.0);
  if (exec == Execution::Parallel) {
    sample_parallel(problem, grid, out);
  } else {
    sample_serial(problem, grid, out);
  }
  return out;
}

ScanResult scan(const DimensionlessProblem& problem, double omega_min, double omega_max,
                double step, Execution exec) {
  ScanResult r;
  if (!(omega_max > omega_min)) return r;
  if (!(step > 0.0)) throw std::invalid_argument("scan: step must be positive");
  DeterminantSamples s = sample_determinant(problem, uniform_grid(omega_min, omega_max, step), exec);
  refine_samples_near_brackets(problem, s, exec);
  r.brackets = brackets_from_samples(s);
  add_spacing_warnings(r.brackets, step, r.warnings);
  return r;
}

RefineResult refine(const DimensionlessProblem& problem, const Bracket& bracket, double rel_tol) {
  RefineResult out;
  if (bracket.kind == RootKind::SignChange) {
    out.roots.push_back({bisect(problem, bracket.lo, bracket.hi, rel_tol), RootKind::SignChange, 1});
    return out;
  }

  // Look for a hidden pair of sign changes first, at two nested resolutions.
  double lo = bracket.lo;
  double hi = bracket.hi;
  for (int level = 0; level < 2; ++level) {
    std::vector<double> grid(kSubsamples + 1);
    for (int i = 0; i <= kSubsamples; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / kSubsamples;
    const DeterminantSamples s = sample_determinant(problem, grid, Execution::Serial);
    std::vector<Root> found;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (s.sign[i] != 0 && s.sign[i + 1] != 0 && s.sign[i] != s.sign[i + 1]) {
        found.push_back({bisect(problem, grid[i], grid[i + 1], rel_tol), RootKind::SignChange, 1});
      }
    }
    if (found.size() >= 2) {
      if (found.size() == 2 &&
          found[1].omega - found[0].omega <= kMergeRel * found[0].omega) {
        out.roots.push_back({0.5 * (found[0].omega + found[1].omega), RootKind::Tangential, 2});
        return out;
      }
      out.roots = found;
      out.diagnostic = "close roots resolved inside one scan step near Omega = " + fmt(found[0].omega) +
                       "; possible missed root at the coarse step";
      return out;
    }
    const auto best = std::min_element(s.log_abs.begin(), s.log_abs.end()) - s.log_abs.begin();
    const double w = (hi - lo) / kSubsamples;
    const double c = grid[static_cast<std::size_t>(best)];
    lo = std::max(bracket.lo, c - w);
    hi = std::min(bracket.hi, c + w);
  }

  const double x = golden_min(problem, lo, hi, rel_tol);
  const LogDeterminant at_min = determinant(x, problem);
  const LogDeterminant at_lo = determinant(bracket.lo, problem);
  const LogDeterminant at_hi = determinant(bracket.hi, problem);
  const double depth = (std::min(at_lo.log_abs, at_hi.log_abs) - at_min.log_abs) / kLn10;
  if (at_min.sign == 0 || depth >= kTangentialDepthDecades) {
    out.roots.push_back({x, RootKind::Tangential, 2});
  } else {
    out.diagnostic = "tangential candidate near Omega = " + fmt(x) + " rejected (depth " +
                     fmt(depth) + " decades)";
  }
  return out;
}

std::vector<double> expand_multiplicity(const std::vector<ModeResult>& modes) {
  std::vector<double> out;
  for (const auto& m : modes) {
    for (int i = 0; i < m.multiplicity; ++i) out.push_back(m.omega);
  }
  return out;
}

namespace {

std::size_t segment_at(const DimensionlessProblem& problem, double phi, bool from_right) {
  const auto& segs = problem.segments;
  for (std::size_t j = 0; j < segs.size(); ++j) {
    if (from_right ? (phi >= segs[j].start && phi < segs[j].end)
                   : (phi > segs[j].start && phi <= segs[j].end)) {
      return j;
    }
  }
  return from_right ? segs.size() - 1 : 0;
}

double evaluate(const DimensionlessProblem& problem, const std::vector<SegmentParams>& params,
                const std::vector<std::array<double, 4>>& coeffs, double phi, int order,
                bool from_right) {
  const std::size_t j = segment_at(problem, phi, from_right);
  const double len = problem.segments[j].length();
  const BasisEval e = basis_eval(params[j], phi - problem.segments[j].start,
                                 assembly_basis(params[j], len), std::max(order, 0), len);
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += coeffs[j][static_cast<std::size_t>(i)] * e.d[order][i];
  return v;
}

ModeResult extract_mode(const DimensionlessProblem& problem, const Root& root, int index,
                        int samples) {
  ModeResult m;
  m.index = index;
  m.omega = root.omega;
  m.kind = root.kind;
  m.multiplicity = root.multiplicity;

  const GlobalSystem sys = build_system(root.omega, problem);
  const Eigen::VectorXd v = null_vector(sys.matrix);
  m.coefficients.resize(problem.segments.size());
  for (std::size_t j = 0; j < problem.segments.size(); ++j) {
    for (int i = 0; i < 4; ++i) m.coefficients[j][static_cast<std::size_t>(i)] = v(static_cast<Eigen::Index>(4 * j) + i);
  }

  const double beta = problem.central_angle();
  const int n = std::max(samples, 2);
  m.shape_angle.resize(static_cast<std::size_t>(n));
  m.shape_value.resize(static_cast<std::size_t>(n));
  double peak = 0.0;
  double peak_signed = 1.0;
  for (int i = 0; i < n; ++i) {
    const double phi = beta * i / (n - 1);
    const double x = evaluate(problem, sys.params, m.coefficients, phi, 0, i < n - 1);
    m.shape_angle[static_cast<std::size_t>(i)] = phi;
    m.shape_value[static_cast<std::size_t>(i)] = x;
    if (std::abs(x) > peak * (1.0 + 1e-12)) {
      peak = std::abs(x);
      peak_signed = x;
    }
  }
  const double scale = peak > 0.0 ? 1.0 / peak_signed : 1.0;
  for (auto& x : m.shape_value) x *= scale;
  for (auto& c : m.coefficients) {
    for (auto& x : c) x *= scale;
  }
  return m;
}

}  // namespace

double mode_derivative(const DimensionlessProblem& problem, const ModeResult& mode, double phi,
                       int order, bool from_right) {
  return evaluate(problem, segment_params(mode.omega, problem), mode.coefficients, phi, order,
                  from_right);
}

ModeSet modes(const DimensionlessProblem& problem, int k, const SolveOptions& options) {
  if (k < 1) throw std::invalid_argument("modes: k must be at least 1");
  ModeSet out;
  const bool fixed_ceiling = options.omega_max > 0.0;
  double lo = options.omega_min;
  double hi = fixed_ceiling ? options.omega_max : std::max(64.0, 4.0 * options.omega_min);

  std::vector<Root> roots;
  DeterminantSamples samples;
  double last_step = 0.0;
  while (true) {
    last_step = (hi - lo) / options.steps;
    DeterminantSamples chunk = sample_determinant(problem, uniform_grid(lo, hi, last_step), options.exec);
    if (!samples.omega.empty()) {
      // shared endpoint
      chunk.omega.erase(chunk.omega.begin());
      chunk.sign.erase(chunk.sign.begin());
      chunk.log_abs.erase(chunk.log_abs.begin());
    }
    merge_samples(samples, chunk);
    DeterminantSamples fine = samples;
    refine_samples_near_brackets(problem, fine, options.exec);
    const std::vector<Bracket> brackets = brackets_from_samples(fine);

    roots.clear();
    std::vector<std::string> notes;
    for (const Bracket& b : brackets) {
      RefineResult r = refine(problem, b);
      if (!r.diagnostic.empty()) notes.push_back(r.diagnostic);
      roots.insert(roots.end(), r.roots.begin(), r.roots.end());
    }
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.omega < b.omega; });
    std::vector<Root> unique;
    for (const Root& r : roots) {
      if (!unique.empty() && r.omega - unique.back().omega <= kMergeRel * r.omega) {
        if (r.kind == RootKind::Tangential) unique.back() = r;
        continue;
      }
      unique.push_back(r);
    }
    roots = std::move(unique);

    const bool enough = static_cast<int>(roots.size()) >= k;
    if (enough || fixed_ceiling || hi >= options.omega_cap) {
      out.diagnostics = std::move(notes);
      std::vector<std::string> spacing;
      add_spacing_warnings(brackets, last_step, spacing);
      out.diagnostics.insert(out.diagnostics.end(), spacing.begin(), spacing.end());
      break;
    }
    lo = hi;
    hi = std::min(options.omega_cap, 4.0 * hi);
  }

  const int count = std::min<int>(k, static_cast<int>(roots.size()));
  out.complete = count == k;
  if (!out.complete) {
    out.diagnostics.push_back("found " + std::to_string(count) + " of " + std::to_string(k) +
                              " roots below Omega = " + fmt(hi));
  }
  out.modes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.modes.push_back(extract_mode(problem, roots[static_cast<std::size_t>(i)], i + 1, options.shape_samples));
  }
  return out;
}

}  // namespace arcfreq

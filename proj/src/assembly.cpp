#include "arcfreq/assembly.hpp"

#include <cmath>
#include <string>

namespace arcfreq {

namespace {

Eigen::Index column(std::size_t segment) { return static_cast<Eigen::Index>(4 * segment); }

/// Coefficients of X^(order) at the local angle, as a row over the four basis
/// functions.
Eigen::RowVector4d derivative_row(const BasisEval& e, int order) {
  return {e.d[order][0], e.d[order][1], e.d[order][2], e.d[order][3]};
}

/// X'' + g X with g = 1 + A eta (or 1 + A for the literal free edge).
Eigen::RowVector4d moment_row(const BasisEval& e, double g) {
  return derivative_row(e, 2) + g * derivative_row(e, 0);
}

Eigen::RowVector4d shear_row(const BasisEval& e, double g) {
  return derivative_row(e, 3) + g * derivative_row(e, 1);
}

double moment_factor(const SegmentParams& p, double eta_bar) { return 1.0 + p.A * eta_bar; }

/// Rows for the continuity/jump conditions between the end of segment `left`
/// and the start of segment `right`.
ConditionRows junction_rows(std::size_t left, std::size_t right,
                            const DimensionlessProblem& problem,
                            const std::vector<SegmentParams>& params, double kappa,
                            const std::string& tag) {
  const auto& segs = problem.segments;
  const Eigen::Index cols = column(segs.size());
  ConditionRows rows{Eigen::MatrixXd::Zero(4, cols), {}};

  const SegmentParams& pl = params[left];
  const SegmentParams& pr = params[right];
  const BasisEval el = basis_eval(pl, segs[left].length(), assembly_basis(pl, segs[left].length()),
                                  3, segs[left].length());
  const BasisEval er = basis_eval(pr, 0.0, assembly_basis(pr, segs[right].length()), 3,
                                  segs[right].length());
  const double gl = moment_factor(pl, problem.eta_bar);
  const double gr = moment_factor(pr, problem.eta_bar);
  const double tl = segs[left].thickness_ratio;
  const double tr = segs[right].thickness_ratio;
  const double il = tl * tl * tl;
  const double ir = tr * tr * tr;

  const Eigen::Index cl = column(left);
  const Eigen::Index cr = column(right);

  // [X] = 0
  rows.entries.block(0, cr, 1, 4) = derivative_row(er, 0);
  rows.entries.block(0, cl, 1, 4) -= derivative_row(el, 0);
  rows.labels.push_back(tag + " [X]=0");

  // [X'] = kappa (X'' + (1 + A eta) X) / (1 + eta): the spring rotation follows
  // the moment conjugate to X', so kappa > 0 softens. Moment taken on the thinner
  // side (left on ties) to match the inertia kappa was built with.
  rows.entries.block(1, cr, 1, 4) = derivative_row(er, 1);
  rows.entries.block(1, cl, 1, 4) -= derivative_row(el, 1);
  if (kappa != 0.0) {
    const double w = kappa / (1.0 + problem.eta_bar);
    if (tr < tl) {
      rows.entries.block(1, cr, 1, 4) -= w * moment_row(er, gr);
    } else {
      rows.entries.block(1, cl, 1, 4) -= w * moment_row(el, gl);
    }
  }
  rows.labels.push_back(tag + " [X']=theta");

  // [M] = 0, M ~ t^3 (X'' + (1 + A eta) X)
  rows.entries.block(2, cr, 1, 4) = ir * moment_row(er, gr);
  rows.entries.block(2, cl, 1, 4) -= il * moment_row(el, gl);
  rows.labels.push_back(tag + " [M]=0");

  // [Q] = 0, Q ~ dM/dphi
  rows.entries.block(3, cr, 1, 4) = ir * shear_row(er, gr);
  rows.entries.block(3, cl, 1, 4) -= il * shear_row(el, gl);
  rows.labels.push_back(tag + " [Q]=0");
  return rows;
}

}  // namespace

std::vector<SegmentParams> segment_params(double omega, const DimensionlessProblem& problem) {
  std::vector<SegmentParams> out;
  out.reserve(problem.segments.size());
  for (const auto& s : problem.segments) {
    out.push_back(frequency_params(omega, s.thickness_ratio, problem.eta_bar));
  }
  return out;
}

BasisScaling assembly_basis(const SegmentParams& p, double segment_length) {
  if (p.regime == Regime::HyperTrig && p.mu() * segment_length > kExponentialSwitch) {
    return BasisScaling::Exponential;
  }
  return BasisScaling::Normalized;
}

ConditionRows boundary_rows(const DimensionlessProblem& problem,
                            const std::vector<SegmentParams>& params) {
  const auto& segs = problem.segments;
  const Eigen::Index cols = column(segs.size());
  ConditionRows rows{Eigen::MatrixXd::Zero(4, cols), {}};
  if (problem.boundary == BoundaryType::PeriodicRing) {
    return closure_rows(problem, params);
  }

  const std::size_t last = segs.size() - 1;
  const double l0 = segs.front().length();
  const double ln = segs[last].length();
  const BasisEval e0 = basis_eval(params.front(), 0.0, assembly_basis(params.front(), l0), 3, l0);
  const BasisEval eb = basis_eval(params[last], ln, assembly_basis(params[last], ln), 3, ln);

  rows.entries.block(0, 0, 1, 4) = derivative_row(e0, 0);
  rows.labels.emplace_back("X(0)=0");
  rows.entries.block(1, 0, 1, 4) = derivative_row(e0, 1);
  rows.labels.emplace_back("X'(0)=0");

  const Eigen::Index cn = column(last);
  if (problem.boundary == BoundaryType::ClampedFree) {
    const double g = problem.free_edge == FreeEdgeMode::Consistent
                         ? moment_factor(params[last], problem.eta_bar)
                         : 1.0 + params[last].A;
    rows.entries.block(2, cn, 1, 4) = moment_row(eb, g);
    rows.labels.emplace_back("M(beta)=0");
    rows.entries.block(3, cn, 1, 4) = shear_row(eb, g);
    rows.labels.emplace_back("Q(beta)=0");
  } else {
    rows.entries.block(2, cn, 1, 4) = derivative_row(eb, 0);
    rows.labels.emplace_back("X(beta)=0");
    rows.entries.block(3, cn, 1, 4) = derivative_row(eb, 1);
    rows.labels.emplace_back("X'(beta)=0");
  }
  return rows;
}

ConditionRows interface_rows(std::size_t j, const DimensionlessProblem& problem,
                             const std::vector<SegmentParams>& params, double kappa) {
  if (j < 1 || j >= problem.segments.size()) {
    throw std::out_of_range("interface_rows: interface index out of range");
  }
  return junction_rows(j - 1, j, problem, params, kappa, "interface " + std::to_string(j));
}

ConditionRows closure_rows(const DimensionlessProblem& problem,
                           const std::vector<SegmentParams>& params) {
  return junction_rows(problem.segments.size() - 1, 0, problem, params, 0.0, "closure");
}

GlobalSystem build_system(double omega, const DimensionlessProblem& problem) {
  GlobalSystem sys;
  sys.params = segment_params(omega, problem);
  const std::size_t nseg = problem.segments.size();
  for (std::size_t j = 0; j < nseg; ++j) {
    const double len = problem.segments[j].length();
    sys.basis.push_back(assembly_basis(sys.params[j], len));
    if (sys.basis.back() == BasisScaling::Exponential) {
      sys.log_jacobian += exponential_log_jacobian(sys.params[j], len);
    }
  }
  const Eigen::Index size = column(nseg);
  sys.matrix.resize(size, size);
  sys.row_labels.reserve(static_cast<std::size_t>(size));

  Eigen::Index r = 0;
  auto append = [&](const ConditionRows& rows) {
    sys.matrix.middleRows(r, rows.entries.rows()) = rows.entries;
    r += rows.entries.rows();
    sys.row_labels.insert(sys.row_labels.end(), rows.labels.begin(), rows.labels.end());
  };

  ConditionRows b = boundary_rows(problem, sys.params);
  if (problem.boundary == BoundaryType::PeriodicRing) {
    append(b);
  } else {
    // Clamp rows first, far-end rows last: keeps the matrix block-banded.
    append({b.entries.topRows(2), {b.labels[0], b.labels[1]}});
  }
  for (std::size_t j = 1; j < nseg; ++j) {
    append(interface_rows(j, problem, sys.params, problem.kappa_at(j)));
  }
  if (problem.boundary != BoundaryType::PeriodicRing) {
    append({b.entries.bottomRows(2), {b.labels[2], b.labels[3]}});
  }

  sys.row_scale.resize(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double m = sys.matrix.row(i).cwiseAbs().maxCoeff();
    if (!std::isfinite(m)) {
      throw ConditioningError("non-finite entry in row '" +
                              sys.row_labels[static_cast<std::size_t>(i)] +
                              "' at Omega = " + std::to_string(omega));
    }
    sys.row_scale(i) = m > 0.0 ? 1.0 / m : 1.0;
    sys.matrix.row(i) *= sys.row_scale(i);
  }
  return sys;
}

LogDeterminant determinant(double omega, const DimensionlessProblem& problem) {
  const GlobalSystem sys = build_system(omega, problem);
  LogDeterminant d = lu_log_determinant(sys.matrix);
  if (d.sign != 0) d.log_abs -= sys.log_jacobian;
  return d;
}

}  // namespace arcfreq

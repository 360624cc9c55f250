#include "arcfreq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace arcfreq::oracle {

namespace {

// The pencil is assembled and factored in extended precision: the h^2 and h^4
// lower-order terms sit next to O(1) fourth-difference coefficients, and in
// double the lowest modes drift by ~1e-3 at N = 4000.
using Wide = long double;
using WideSparse = Eigen::SparseMatrix<Wide>;
using WideVector = Eigen::Matrix<Wide, Eigen::Dynamic, 1>;
using Triplets = std::vector<Eigen::Triplet<Wide>>;
using Index = Eigen::Index;

/// Sparse row under construction: (column, coefficient) pairs for K and M.
using Terms = std::vector<std::pair<Index, Wide>>;

struct Row {
  Terms k;
  Terms m;
};

struct SegmentGrid {
  Index offset = 0;      // global index of local node -2
  std::size_t intervals = 0;
  double thickness_ratio = 1.0;

  Index node(std::ptrdiff_t local) const { return offset + static_cast<Index>(local + 2); }
};

/// Central-difference stencils at local node `k`, pre-multiplied by h^order.
void add_d0(Terms& r, const SegmentGrid& g, std::ptrdiff_t k, Wide w) {
  r.emplace_back(g.node(k), w);
}
void add_d1(Terms& r, const SegmentGrid& g, std::ptrdiff_t k, Wide w) {
  r.emplace_back(g.node(k + 1), 0.5 * w);
  r.emplace_back(g.node(k - 1), -0.5 * w);
}
void add_d2(Terms& r, const SegmentGrid& g, std::ptrdiff_t k, Wide w) {
  r.emplace_back(g.node(k + 1), w);
  r.emplace_back(g.node(k), -2.0 * w);
  r.emplace_back(g.node(k - 1), w);
}
void add_d3(Terms& r, const SegmentGrid& g, std::ptrdiff_t k, Wide w) {
  r.emplace_back(g.node(k + 2), 0.5 * w);
  r.emplace_back(g.node(k + 1), -w);
  r.emplace_back(g.node(k - 1), w);
  r.emplace_back(g.node(k - 2), -0.5 * w);
}

/// h^2 (X'' + g X), g = 1 + lambda * c  (c = eta/t^2, or 1/t^2 for the literal free edge).
void add_moment(Row& row, const SegmentGrid& g, std::ptrdiff_t k, Wide h, Wide c, Wide w) {
  add_d2(row.k, g, k, w);
  add_d0(row.k, g, k, w * h * h);
  add_d0(row.m, g, k, -w * h * h * c);
}

/// h^3 (X''' + g X')
void add_shear(Row& row, const SegmentGrid& g, std::ptrdiff_t k, Wide h, Wide c, Wide w) {
  add_d3(row.k, g, k, w);
  add_d1(row.k, g, k, w * h * h);
  add_d1(row.m, g, k, -w * h * h * c);
}

class Assembler {
 public:
  explicit Assembler(Index size) : size_(size) {}

  void push(const Row& row) {
    for (const auto& [c, v] : row.k) k_.emplace_back(rows_, c, v);
    for (const auto& [c, v] : row.m) m_.emplace_back(rows_, c, v);
    ++rows_;
  }

  Index rows() const { return rows_; }

  void finish(WideSparse& k, WideSparse& m) const {
    k.resize(size_, size_);
    m.resize(size_, size_);
    k.setFromTriplets(k_.begin(), k_.end());
    m.setFromTriplets(m_.begin(), m_.end());
  }

 private:
  Index size_;
  Index rows_ = 0;
  Triplets k_;
  Triplets m_;
};

void junction(Assembler& out, const SegmentGrid& left, const SegmentGrid& right, Wide h,
              Wide eta, Wide kappa) {
  const auto kl = static_cast<std::ptrdiff_t>(left.intervals);
  const Wide tl = left.thickness_ratio;
  const Wide tr = right.thickness_ratio;
  const Wide cl = eta / (tl * tl);
  const Wide cr = eta / (tr * tr);

  Row cont;
  add_d0(cont.k, right, 0, 1.0);
  add_d0(cont.k, left, kl, -1.0);
  out.push(cont);

  Row slope;  // h [X'] - h kappa/(1+eta) (X'' + g X)_thin = 0
  add_d1(slope.k, right, 0, 1.0);
  add_d1(slope.k, left, kl, -1.0);
  if (kappa != 0.0) {
    const Wide w = -kappa / (1.0L + eta) / h;
    if (tr < tl) {
      add_moment(slope, right, 0, h, cr, w);
    } else {
      add_moment(slope, left, kl, h, cl, w);
    }
  }
  out.push(slope);

  Row moment;
  add_moment(moment, right, 0, h, cr, tr * tr * tr);
  add_moment(moment, left, kl, h, cl, -tl * tl * tl);
  out.push(moment);

  Row shear;
  add_shear(shear, right, 0, h, cr, tr * tr * tr);
  add_shear(shear, left, kl, h, cl, -tl * tl * tl);
  out.push(shear);
}

struct Pencil {
  WideSparse k;
  WideSparse m;
};

Pencil assemble(const DimensionlessProblem& p, const FdMesh& mesh) {
  // Spacing recomputed in extended precision rather than widened from double.
  const Wide h = static_cast<Wide>(p.central_angle()) / static_cast<Wide>(mesh.intervals);
  const Wide eta = p.eta_bar;
  std::vector<SegmentGrid> grids;
  Index offset = 0;
  for (std::size_t j = 0; j < p.segments.size(); ++j) {
    SegmentGrid g;
    g.offset = offset;
    g.intervals = mesh.interface_nodes[j + 1] - mesh.interface_nodes[j];
    g.thickness_ratio = p.segments[j].thickness_ratio;
    offset += static_cast<Index>(g.intervals + 5);
    grids.push_back(g);
  }

  Assembler a(offset);
  const Wide h2 = h * h;
  const Wide h4 = h2 * h2;
  for (const SegmentGrid& g : grids) {
    const Wide t = g.thickness_ratio;
    const Wide inv_t2 = 1.0L / (t * t);
    for (std::ptrdiff_t k = 0; k <= static_cast<std::ptrdiff_t>(g.intervals); ++k) {
      Row r;
      // h^4 [X'''' + 2 X'' + X] = lambda h^4 / t^2 [X - eta X'']
      r.k.emplace_back(g.node(k - 2), 1.0);
      r.k.emplace_back(g.node(k - 1), -4.0);
      r.k.emplace_back(g.node(k), 6.0);
      r.k.emplace_back(g.node(k + 1), -4.0);
      r.k.emplace_back(g.node(k + 2), 1.0);
      add_d2(r.k, g, k, 2.0 * h2);
      add_d0(r.k, g, k, h4);
      add_d0(r.m, g, k, h4 * inv_t2);
      add_d2(r.m, g, k, -eta * h2 * inv_t2);
      a.push(r);
    }
  }

  const SegmentGrid& first = grids.front();
  const SegmentGrid& last = grids.back();
  const auto kn = static_cast<std::ptrdiff_t>(last.intervals);
  if (p.boundary == BoundaryType::PeriodicRing) {
    junction(a, last, first, h, eta, 0.0);
  } else {
    Row x0;
    add_d0(x0.k, first, 0, 1.0);
    a.push(x0);
    Row s0;
    add_d1(s0.k, first, 0, 1.0);
    a.push(s0);
    if (p.boundary == BoundaryType::ClampedFree) {
      const Wide tn = last.thickness_ratio;
      const Wide c = p.free_edge == FreeEdgeMode::Consistent ? eta / (tn * tn) : 1.0L / (tn * tn);
      Row mom;
      add_moment(mom, last, kn, h, c, 1.0);
      a.push(mom);
      Row shr;
      add_shear(shr, last, kn, h, c, 1.0);
      a.push(shr);
    } else {
      Row xb;
      add_d0(xb.k, last, kn, 1.0);
      a.push(xb);
      Row sb;
      add_d1(sb.k, last, kn, 1.0);
      a.push(sb);
    }
  }
  for (std::size_t j = 1; j < grids.size(); ++j) {
    junction(a, grids[j - 1], grids[j], h, eta, p.kappa_at(j));
  }
  if (a.rows() != offset) throw std::logic_error("fd_eigen: pencil is not square");

  Pencil out;
  a.finish(out.k, out.m);
  return out;
}

/// Eigenvalues of (K - sigma M)^-1 M, lambda = sigma + 1/theta.
struct Ritz {
  std::complex<double> lambda;
  double residual = 0.0;
};

using WideLu = Eigen::SparseLU<WideSparse, Eigen::COLAMDOrdering<int>>;

void factor_shifted(const Pencil& p, double sigma, WideLu& lu) {
  WideSparse shifted = p.k - static_cast<Wide>(sigma) * p.m;
  shifted.makeCompressed();
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) {
    throw std::runtime_error("fd_eigen: sparse LU of the shifted pencil failed");
  }
}

std::vector<Ritz> dense_spectrum(const Pencil& p, double sigma) {
  WideLu lu;
  factor_shifted(p, sigma, lu);
  const Index n = p.k.rows();
  Eigen::MatrixXd t(n, n);
  for (Index j = 0; j < n; ++j) {
    const WideVector col = p.m.col(j);
    t.col(j) = lu.solve(col).cast<double>();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(t, false);
  const Eigen::VectorXcd theta = es.eigenvalues();
  const double scale = theta.cwiseAbs().maxCoeff();
  std::vector<Ritz> out;
  for (Index i = 0; i < theta.size(); ++i) {
    if (std::abs(theta(i)) <= 1e-13 * scale) continue;
    out.push_back({sigma + 1.0 / theta(i), 0.0});
  }
  return out;
}

std::vector<Ritz> arnoldi_spectrum(const Pencil& p, double sigma, std::size_t wanted,
                                   std::vector<std::string>& diagnostics) {
  // The Krylov basis stays in double; only the operator is applied wide.
  WideLu lu;
  factor_shifted(p, sigma, lu);
  const Index n = p.k.rows();

  for (Index dim = 40;; dim *= 2) {
    dim = std::min(dim, n);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, dim + 1);
    Eigen::MatrixXd hm = Eigen::MatrixXd::Zero(dim + 1, dim);
    for (Index i = 0; i < n; ++i) v(i, 0) = 1.0 + 0.25 * std::sin(0.7 * static_cast<double>(i));
    v.col(0).normalize();
    Index steps = dim;
    for (Index j = 0; j < dim; ++j) {
      const WideVector rhs = p.m * v.col(j).cast<Wide>();
      Eigen::VectorXd w = lu.solve(rhs).cast<double>();
      for (int pass = 0; pass < 2; ++pass) {
        for (Index i = 0; i <= j; ++i) {
          const double c = v.col(i).dot(w);
          hm(i, j) += c;
          w -= c * v.col(i);
        }
      }
      hm(j + 1, j) = w.norm();
      if (hm(j + 1, j) < 1e-14 * hm.col(j).norm()) {
        steps = j + 1;
        break;
      }
      v.col(j + 1) = w / hm(j + 1, j);
    }

    const Eigen::MatrixXd hsq = hm.topLeftCorner(steps, steps);
    Eigen::EigenSolver<Eigen::MatrixXd> es(hsq, true);
    const Eigen::VectorXcd theta = es.eigenvalues();
    const Eigen::MatrixXcd y = es.eigenvectors();
    const double beta = steps < dim ? 0.0 : hm(steps, steps - 1);

    std::vector<Ritz> out;
    const double scale = theta.cwiseAbs().maxCoeff();
    for (Index i = 0; i < theta.size(); ++i) {
      if (std::abs(theta(i)) <= 1e-13 * scale) continue;
      const double res = beta * std::abs(y(steps - 1, i)) / std::abs(theta(i));
      out.push_back({sigma + 1.0 / theta(i), res});
    }
    std::sort(out.begin(), out.end(), [&](const Ritz& a, const Ritz& b) {
      return std::abs(a.lambda - sigma) < std::abs(b.lambda - sigma);
    });
    // Converged when the `wanted` Ritz values closest to the shift are accurate.
    bool converged = out.size() >= wanted || steps < dim;
    for (std::size_t i = 0; i < std::min(wanted, out.size()); ++i) {
      if (out[i].residual > 1e-10) converged = false;
    }
    if (converged || dim >= n || dim >= 1280) {
      if (!converged) diagnostics.push_back("shift-invert Arnoldi did not converge at dimension " + std::to_string(dim));
      out.resize(std::min(out.size(), wanted));
      return out;
    }
  }
}

}  // namespace

FdMesh FdMesh::build(const DimensionlessProblem& problem, std::size_t intervals) {
  if (intervals < kMinIntervals) {
    throw std::invalid_argument("fd mesh needs at least " + std::to_string(kMinIntervals) +
                                " intervals (got " + std::to_string(intervals) + ")");
  }
  FdMesh mesh;
  mesh.intervals = intervals;
  mesh.spacing = problem.central_angle() / static_cast<double>(intervals);
  mesh.interface_nodes.push_back(0);
  for (std::size_t j = 1; j < problem.segments.size(); ++j) {
    const double x = problem.segments[j].start / mesh.spacing;
    mesh.interface_nodes.push_back(static_cast<std::size_t>(std::llround(x)));
  }
  mesh.interface_nodes.push_back(intervals);
  for (std::size_t j = 1; j < mesh.interface_nodes.size(); ++j) {
    if (mesh.interface_nodes[j] <= mesh.interface_nodes[j - 1]) {
      throw std::invalid_argument("fd mesh: interfaces closer than the grid spacing");
    }
  }
  return mesh;
}

FdResult fd_eigen(const DimensionlessProblem& problem, std::size_t intervals, std::size_t k,
                  const FdOptions& options) {
  const FdMesh mesh = FdMesh::build(problem, intervals);
  const Pencil pencil = assemble(problem, mesh);

  FdResult result;
  const bool dense = options.method == FdMethod::Dense ||
                     (options.method == FdMethod::Auto && intervals < kDenseLimit);
  // Extra room for rigid-body and repeated eigenvalues near the shift.
  const std::size_t wanted = 2 * k + 6;
  std::vector<Ritz> spectrum = dense ? dense_spectrum(pencil, options.shift)
                                     : arnoldi_spectrum(pencil, options.shift, wanted, result.diagnostics);
  std::sort(spectrum.begin(), spectrum.end(), [&](const Ritz& a, const Ritz& b) {
    return std::abs(a.lambda - options.shift) < std::abs(b.lambda - options.shift);
  });
  if (spectrum.size() > wanted) spectrum.resize(wanted);

  std::vector<double> lambdas;
  for (const Ritz& r : spectrum) {
    const double re = r.lambda.real();
    const double im = r.lambda.imag();
    if (std::abs(im) > options.complex_tol * std::abs(r.lambda)) {
      ++result.complex_discarded;
      continue;
    }
    if (re > options.omega_floor * options.omega_floor) lambdas.push_back(re);
  }
  std::sort(lambdas.begin(), lambdas.end());
  if (result.complex_discarded > 0) {
    std::ostringstream os;
    os << result.complex_discarded << " eigenvalue(s) with relative imaginary part above "
       << options.complex_tol << " discarded";
    result.diagnostics.push_back(os.str());
  }
  for (std::size_t i = 0; i < std::min(k, lambdas.size()); ++i) {
    result.omegas.push_back(std::sqrt(lambdas[i]));
  }
  if (result.omegas.size() < k) {
    result.diagnostics.push_back("found " + std::to_string(result.omegas.size()) + " of " +
                                 std::to_string(k) + " real eigenvalues");
  }
  return result;
}

}  // namespace arcfreq::oracle

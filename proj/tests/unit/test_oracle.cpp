#include "doctest.h"

#include <cmath>

#include "../support.hpp"
#include "arcfreq/eigensolve.hpp"
#include "arcfreq/oracle.hpp"

using namespace arcfreq;
using namespace arcfreq::testing;

namespace {

oracle::FdOptions arnoldi() {
  oracle::FdOptions o;
  o.method = oracle::FdMethod::ShiftInvertArnoldi;
  return o;
}

std::vector<double> det_roots(const DimensionlessProblem& p, int k) {
  SolveOptions o;
  o.shape_samples = 2;
  return expand_multiplicity(modes(p, k, o).modes);
}

}  // namespace

TEST_CASE("finite differences agree with the determinant roots") {
  SUBCASE("crack-free clamped-free") {
    const DimensionlessProblem p = uniform_problem(BoundaryType::ClampedFree, kDeskBeta, 1e-3);
    const auto det = det_roots(p, 3);
    const auto fd = oracle::fd_eigen(p, 800, 3);
    REQUIRE(fd.omegas.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rel_diff(fd.omegas[i], det[i]) < 2e-3);
  }
  SUBCASE("cracked clamped-clamped") {
    const DimensionlessProblem p = cracked_problem(BoundaryType::ClampedClamped, kDeskBeta, 0.3, 0.5);
    const auto det = det_roots(p, 3);
    const auto fd = oracle::fd_eigen(p, 800, 3);
    REQUIRE(fd.omegas.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rel_diff(fd.omegas[i], det[i]) < 5e-3);
  }
  SUBCASE("stepped, cracked clamped-free with a large flexibility") {
    ArchGeometry g = desk_geometry();
    g.interface_angles = {0.0, 0.25, kDeskBeta};
    g.thicknesses = {5e-9, 3.5e-9};
    const DimensionlessProblem p = build_problem(
        Material{}, g, {{1, 0.5}}, BoundaryType::ClampedFree, {FreeEdgeMode::Consistent, ComplianceModel::Dimarogonas});
    const auto det = det_roots(p, 3);
    const auto fd = oracle::fd_eigen(p, 2000, 3, arnoldi());
    REQUIRE(fd.omegas.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rel_diff(fd.omegas[i], det[i]) < 5e-3);
  }
}

TEST_CASE("dense and Arnoldi paths agree") {
  const DimensionlessProblem p = cracked_problem(BoundaryType::ClampedFree, kDeskBeta, 0.4, 0.5);
  oracle::FdOptions dense;
  dense.method = oracle::FdMethod::Dense;
  const auto a = oracle::fd_eigen(p, 400, 3, dense);
  const auto b = oracle::fd_eigen(p, 400, 3, arnoldi());
  REQUIRE(a.omegas.size() == 3);
  REQUIRE(b.omegas.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.omegas[i] == doctest::Approx(b.omegas[i]).epsilon(1e-9));
}

TEST_CASE("second-order convergence") {
  const DimensionlessProblem p = uniform_problem(BoundaryType::ClampedFree, kDeskBeta);
  const double exact = det_roots(p, 1)[0];
  double err[3];
  const std::size_t ns[] = {200, 400, 800};
  for (int i = 0; i < 3; ++i) err[i] = std::abs(oracle::fd_eigen(p, ns[i], 1, arnoldi()).omegas[0] - exact);
  const double r1 = std::log2(err[0] / err[1]);
  const double r2 = std::log2(err[1] / err[2]);
  CHECK(r1 >= 1.8);
  CHECK(r1 <= 2.2);
  CHECK(r2 >= 1.8);
  CHECK(r2 <= 2.2);
}

TEST_CASE("artificial interface on a grid node leaves the spectrum unchanged to O(h^2)") {
  const std::size_t n = 1200;
  const DimensionlessProblem one = uniform_problem(BoundaryType::ClampedFree, kDeskBeta, 1e-3);
  std::size_t idx = 0;
  const ArchGeometry g = desk_geometry().with_interface(kDeskBeta * 0.25, &idx);
  const DimensionlessProblem two = build_problem(material_for(1e-3), g, {}, BoundaryType::ClampedFree);
  const auto mesh = oracle::FdMesh::build(two, n);
  CHECK(mesh.interface_nodes == std::vector<std::size_t>{0, 300, 1200});
  const auto a = oracle::fd_eigen(one, n, 3, arnoldi());
  const auto b = oracle::fd_eigen(two, n, 3, arnoldi());
  for (std::size_t i = 0; i < 3; ++i) CHECK(rel_diff(b.omegas[i], a.omegas[i]) < 1e-5);
}

TEST_CASE("intact ring: n = 2 doublet at Omega = 3") {
  const DimensionlessProblem p = uniform_problem(BoundaryType::PeriodicRing, 2 * kPi);
  const auto fd = oracle::fd_eigen(p, 1000, 5, arnoldi());
  REQUIRE(fd.omegas.size() == 5);
  CHECK(fd.omegas[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(fd.omegas[1] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(fd.omegas[2] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(fd.omegas[3] == doctest::Approx(8.0).epsilon(1e-3));
  CHECK(fd.omegas[4] == doctest::Approx(8.0).epsilon(1e-3));
}

TEST_CASE("meshes coarser than the minimum are rejected") {
  const DimensionlessProblem p = uniform_problem(BoundaryType::ClampedFree, kDeskBeta);
  CHECK_THROWS_AS(oracle::fd_eigen(p, 100, 3), std::invalid_argument);
  CHECK_THROWS_AS(oracle::FdMesh::build(p, oracle::kMinIntervals - 1), std::invalid_argument);
  CHECK_NOTHROW(oracle::FdMesh::build(p, oracle::kMinIntervals));
}

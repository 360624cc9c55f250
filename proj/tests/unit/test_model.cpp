#include "doctest.h"

#include <algorithm>

#include "../support.hpp"
#include "arcfreq/model.hpp"

using namespace arcfreq;
using namespace arcfreq::testing;

namespace {

bool mentions(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("default specimen validates cleanly") {
  const ValidationReport r = validate(Material{}, desk_geometry(), {}, BoundaryType::ClampedFree);
  CHECK(r.ok());
  CHECK(r.summary().empty());
}

TEST_CASE("through-crack is rejected") {
  std::size_t idx = 0;
  const ArchGeometry g = desk_geometry().with_interface(0.1, &idx);
  const ValidationReport r = validate(Material{}, g, {{idx, 1.0}}, BoundaryType::ClampedFree);
  CHECK(mentions(r, "through-crack forbidden"));
  CHECK_THROWS_AS(build_problem(Material{}, g, {{idx, 1.0}}, BoundaryType::ClampedFree), ModelError);
}

TEST_CASE("ring needs the full circle") {
  const ValidationReport r =
      validate(Material{}, desk_geometry(kPi), {}, BoundaryType::PeriodicRing);
  CHECK(mentions(r, "ring requires full circle"));
  CHECK(validate(Material{}, desk_geometry(2 * kPi), {}, BoundaryType::PeriodicRing).ok());
}

TEST_CASE("material and geometry invariants") {
  Material m;
  m.youngs_modulus = -1;
  m.poisson_ratio = 0.5;
  m.density = 0;
  m.nonlocal_length_sq = -1e-18;
  ArchGeometry g = desk_geometry();
  g.radius = 0;
  g.thicknesses[0] = -1;
  const ValidationReport r = validate(m, g, {}, BoundaryType::ClampedFree);
  CHECK(mentions(r, "youngs_modulus"));
  CHECK(mentions(r, "poisson_ratio"));
  CHECK(mentions(r, "density"));
  CHECK(mentions(r, "nonlocal_length_sq"));
  CHECK(mentions(r, "radius"));
  CHECK(mentions(r, "thickness h_0"));

  ArchGeometry bad = desk_geometry();
  bad.interface_angles = {0.0, 0.3, 0.2, kDeskBeta};
  bad.thicknesses = {5e-9, 5e-9, 5e-9};
  CHECK(mentions(validate(Material{}, bad, {}, BoundaryType::ClampedFree), "strictly increasing"));
}

TEST_CASE("crack must sit on an interior interface") {
  const ValidationReport r =
      validate(Material{}, desk_geometry(), {{1, 0.3}}, BoundaryType::ClampedFree);
  CHECK(mentions(r, "interior interface"));
  std::size_t idx = 0;
  const ArchGeometry g = desk_geometry().with_interface(0.2, &idx);
  CHECK(mentions(validate(Material{}, g, {{idx, 0.2}, {idx, 0.3}}, BoundaryType::ClampedFree),
                 "share interface"));
}

TEST_CASE("with_interface splits the containing segment and reuses existing ones") {
  ArchGeometry g = desk_geometry();
  g.interface_angles = {0.0, 0.2, kDeskBeta};
  g.thicknesses = {5e-9, 3e-9};
  std::size_t idx = 0;
  const ArchGeometry a = g.with_interface(0.1, &idx);
  CHECK(idx == 1);
  REQUIRE(a.segment_count() == 3);
  CHECK(a.thicknesses[0] == 5e-9);
  CHECK(a.thicknesses[1] == 5e-9);
  CHECK(a.thicknesses[2] == 3e-9);
  const ArchGeometry b = a.with_interface(0.2, &idx);
  CHECK(idx == 2);
  CHECK(b.segment_count() == 3);
  CHECK_THROWS_AS(g.with_interface(kDeskBeta, &idx), ModelError);
}

TEST_CASE("nondimensionalize: thickness ratios and eta_bar") {
  SUBCASE("uniform arch gives unit ratios for any number of artificial interfaces") {
    ArchGeometry g = desk_geometry();
    std::size_t idx = 0;
    for (double a : {0.05, 0.11, 0.3, 0.4}) g = g.with_interface(a, &idx);
    const DimensionlessProblem p = nondimensionalize(Material{}, g, {}, BoundaryType::ClampedFree);
    REQUIRE(p.segments.size() == 5);
    for (const Segment& s : p.segments) CHECK(s.thickness_ratio == 1.0);
    CHECK(p.central_angle() == doctest::Approx(kDeskBeta).epsilon(1e-15));
  }
  SUBCASE("eta_raw = 0 is the classical limit") {
    CHECK(nondimensionalize(Material{}, desk_geometry(), {}, BoundaryType::ClampedFree).eta_bar == 0.0);
  }
  SUBCASE("R = 110 nm, eta_raw = 1 nm^2") {
    Material m;
    m.nonlocal_length_sq = 1e-18;
    const DimensionlessProblem p = nondimensionalize(m, desk_geometry(), {}, BoundaryType::ClampedFree);
    CHECK(p.eta_bar == doctest::Approx(1.0 / (110.0 * 110.0)).epsilon(1e-14));
    CHECK(p.eta_bar == doctest::Approx(8.2645e-5).epsilon(1e-4));
  }
  SUBCASE("stepped arch") {
    ArchGeometry g = desk_geometry();
    g.interface_angles = {0.0, 0.2, kDeskBeta};
    g.thicknesses = {4e-9, 2e-9};
    std::size_t idx = 1;
    const DimensionlessProblem p =
        nondimensionalize(Material{}, g, {{idx, 0.3}}, BoundaryType::ClampedFree);
    CHECK(p.segments[1].thickness_ratio == 0.5);
    CHECK(p.slenderness == doctest::Approx(4.0 / 110.0));
    REQUIRE(p.cracks.size() == 1);
    CHECK(p.cracks[0].ref_thickness_ratio == 0.5);
    CHECK(p.cracks[0].angle == 0.2);
  }
}

TEST_CASE("nondimensionalization is invariant under a common length scale") {
  // lambda = 2 keeps every quotient bit-identical.
  for (double lambda : {2.0, 0.25}) {
    Material m;
    m.nonlocal_length_sq = 3e-18;
    ArchGeometry g = desk_geometry();
    g.interface_angles = {0.0, 0.2, kDeskBeta};
    g.thicknesses = {4e-9, 6e-9};
    Material ms = m;
    ms.nonlocal_length_sq *= lambda * lambda;
    ArchGeometry gs = g;
    gs.radius *= lambda;
    gs.width *= lambda;
    for (double& h : gs.thicknesses) h *= lambda;
    const auto a = build_problem(m, g, {{1, 0.4}}, BoundaryType::ClampedFree);
    const auto b = build_problem(ms, gs, {{1, 0.4}}, BoundaryType::ClampedFree);
    CHECK(a.eta_bar == b.eta_bar);
    CHECK(a.slenderness == b.slenderness);
    for (std::size_t j = 0; j < a.segments.size(); ++j) {
      CHECK(a.segments[j].thickness_ratio == b.segments[j].thickness_ratio);
      CHECK(a.segments[j].start == b.segments[j].start);
    }
    CHECK(a.cracks[0].kappa == b.cracks[0].kappa);
  }
}

TEST_CASE("frequency scaling round trip") {
  const Material m;
  const ArchGeometry g = desk_geometry();
  const double w = to_rad_per_s(13.0, m, g);
  // omega = Omega h0 / (R^2 sqrt(12 rho / E))
  const double expected = 13.0 * 5e-9 / (110e-9 * 110e-9 * std::sqrt(12.0 * 10.0 / 7e11));
  CHECK(w == doctest::Approx(expected).epsilon(1e-14));
  CHECK(to_dimensionless(w, m, g) == doctest::Approx(13.0).epsilon(1e-14));
}

TEST_CASE("kappa_at returns zero on artificial interfaces") {
  const DimensionlessProblem p = cracked_problem(BoundaryType::ClampedFree, kDeskBeta, 0.4, 0.5);
  CHECK(p.kappa_at(1) > 0.0);
  CHECK(p.kappa_at(2) == 0.0);
}

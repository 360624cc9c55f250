#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arcfreq/segment.hpp"

using namespace arcfreq;

namespace {

double residual_scale(const SegmentParams& p, double eta, double phi, int fn, BasisScaling sc,
                      double len = 0.0) {
  const BasisEval e = basis_eval(p, phi, sc, 4, len);
  return std::abs(e.d[4][fn]) + std::abs((2.0 + p.A * eta) * e.d[2][fn]) +
         std::abs((1.0 - p.A) * e.d[0][fn]) + 1e-300;
}

}  // namespace

TEST_CASE("frequency parameters for Omega = 2, t = 1, eta = 0") {
  const SegmentParams p = frequency_params(2.0, 1.0, 0.0);
  CHECK(p.A == 4.0);
  CHECK(p.B == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.regime == Regime::HyperTrig);
  CHECK(p.mu() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.nu() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("Omega -> 0 tends to the bi-trigonometric double root at 1") {
  const SegmentParams p = frequency_params(1e-6, 1.0, 0.01);
  CHECK(p.regime == Regime::BiTrig);
  // mu_hat^2, nu^2 = 1 -/+ O(Omega)
  CHECK(p.mu() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(p.nu() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(p.mu() < 1.0);
  CHECK(p.nu() > 1.0);
}

TEST_CASE("A = 1 is the degenerate double zero root") {
  for (double eta : {0.0, 1e-4, 0.04}) {
    const SegmentParams p = frequency_params(0.7, 0.7, eta);
    CHECK(p.regime == Regime::DegenerateZero);
    CHECK(p.nu_sq == doctest::Approx(2.0 + eta).epsilon(1e-14));
  }
}

TEST_CASE("characteristic polynomial vanishes at the computed roots") {
  for (double omega : {0.3, 0.99, 1.01, 2.0, 13.07, 80.0, 700.0}) {
    for (double t : {0.5, 1.0, 1.7}) {
      for (double eta : {0.0, 8.26e-5, 0.04, 0.16}) {
        const SegmentParams p = frequency_params(omega, t, eta);
        if (p.regime == Regime::DegenerateZero) continue;
        const double c2 = 2.0 + p.A * eta;
        const double c0 = 1.0 - p.A;
        const double scale = std::max({p.nu_sq * p.nu_sq, std::abs(c2 * p.nu_sq), std::abs(c0), 1.0});
        // lambda^2 = -nu^2 and lambda^2 = +mu^2 (mu_sq signed)
        const double l1 = -p.nu_sq;
        const double l2 = p.mu_sq;
        CHECK(std::abs(l1 * l1 + c2 * l1 + c0) <= 1e-12 * scale);
        CHECK(std::abs(l2 * l2 + c2 * l2 + c0) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("basis at phi = 0") {
  const SegmentParams p = frequency_params(2.0, 1.0, 0.0);
  const BasisEval raw = basis_eval(p, 0.0);
  CHECK(raw.value(0, 0) == 1.0);
  CHECK(raw.value(0, 1) == 0.0);
  CHECK(raw.value(0, 2) == 1.0);
  CHECK(raw.value(0, 3) == 0.0);
  CHECK(raw.value(1, 1) == doctest::Approx(p.mu()));
  CHECK(raw.value(1, 3) == doctest::Approx(p.nu()));
  const BasisEval norm = basis_eval(p, 0.0, BasisScaling::Normalized);
  CHECK(norm.value(1, 1) == 1.0);
  CHECK_THROWS_AS(basis_eval(p, 0.0, BasisScaling::Raw, 5), std::invalid_argument);
}

TEST_CASE("every basis function satisfies the segment ODE") {
  for (double omega : {0.2, 0.8, 0.9999, 1.0001, 3.0, 13.07, 79.8, 440.0}) {
    for (double t : {0.6, 1.0}) {
      for (double eta : {0.0, 1e-3, 0.04}) {
        const SegmentParams p = frequency_params(omega, t, eta);
        for (auto sc : {BasisScaling::Raw, BasisScaling::Normalized, BasisScaling::Exponential}) {
          for (double phi : {0.0, 0.13, 0.41, 0.52}) {
            for (int fn = 0; fn < 4; ++fn) {
              CAPTURE(omega);
              CAPTURE(fn);
              const double r = ode_residual(p, eta, phi, fn, sc, 0.52);
              CHECK(std::abs(r) <= 1e-9 * residual_scale(p, eta, phi, fn, sc, 0.52));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("analytic derivatives match central differences") {
  const double h = 1e-4;
  for (double omega : {0.5, 1.0 + 1e-9, 2.0, 20.0}) {
    const SegmentParams p = frequency_params(omega, 1.0, 0.01);
    for (auto sc : {BasisScaling::Raw, BasisScaling::Normalized, BasisScaling::Exponential}) {
      const double phi = 0.3;
      const BasisEval c = basis_eval(p, phi, sc, 4, 0.5);
      const BasisEval l = basis_eval(p, phi - h, sc, 4, 0.5);
      const BasisEval r = basis_eval(p, phi + h, sc, 4, 0.5);
      for (int k = 0; k < 4; ++k) {
        for (int fn = 0; fn < 4; ++fn) {
          const double fd = (r.d[k][fn] - l.d[k][fn]) / (2 * h);
          const double scale = std::max({1.0, std::abs(c.d[k + 1][fn]), std::abs(c.d[k][fn])});
          CHECK(std::abs(fd - c.d[k + 1][fn]) <= 1e-6 * scale);
        }
      }
    }
  }
}

TEST_CASE("normalized basis is continuous across the degenerate regime") {
  const double eta = 0.01;
  const double phi = 0.37;
  // A = 1 gives mu_sq = 0; nudge Omega so that |mu_sq| is about 1e-8 on either side.
  const SegmentParams mid = frequency_params(1.0, 1.0, eta);
  const double dA = 1e-8 * mid.nu_sq;
  const SegmentParams below = frequency_params(std::sqrt(1.0 - dA), 1.0, eta);
  const SegmentParams above = frequency_params(std::sqrt(1.0 + dA), 1.0, eta);
  REQUIRE(mid.regime == Regime::DegenerateZero);
  REQUIRE(below.regime == Regime::BiTrig);
  REQUIRE(above.regime == Regime::HyperTrig);
  const BasisEval a = basis_eval(below, phi, BasisScaling::Normalized);
  const BasisEval b = basis_eval(mid, phi, BasisScaling::Normalized);
  const BasisEval c = basis_eval(above, phi, BasisScaling::Normalized);
  for (int k = 0; k < 2; ++k) {
    for (int fn = 0; fn < 4; ++fn) {
      CHECK(a.d[k][fn] == doctest::Approx(b.d[k][fn]).epsilon(1e-7));
      CHECK(c.d[k][fn] == doctest::Approx(b.d[k][fn]).epsilon(1e-7));
    }
  }
}

TEST_CASE("regime classification follows the sign of A - 1 with a thin degenerate band") {
  for (double t : {0.4, 1.0, 2.5}) {
    for (int i = 1; i <= 400; ++i) {
      const double omega = 0.01 * i * t;
      const SegmentParams p = frequency_params(omega, t, 0.02);
      const double A = omega * omega / (t * t);
      if (std::abs(A - 1.0) < 1e-6) {
        CHECK(p.regime == Regime::DegenerateZero);
      } else {
        CHECK(p.regime == (A > 1.0 ? Regime::HyperTrig : Regime::BiTrig));
      }
    }
  }
}

TEST_CASE("exponential basis is a positive change of the normalized basis") {
  const double L = 0.8;
  for (double omega : {3.0, 30.0, 300.0}) {
    const SegmentParams p = frequency_params(omega, 1.0, 0.0);
    const double m = p.mu();
    // Coefficients of exp(-mu phi), exp(-mu(L - phi)) in {cosh, sinh/mu}.
    const double e = std::exp(-m * L);
    const double t00 = 1.0, t10 = -m, t01 = e, t11 = m * e;
    for (double phi : {0.0, 0.2, L}) {
      const BasisEval n = basis_eval(p, phi, BasisScaling::Normalized);
      const BasisEval x = basis_eval(p, phi, BasisScaling::Exponential, 3, L);
      for (int k = 0; k < 4; ++k) {
        const double s0 = std::abs(n.d[k][0]) + std::abs(m * n.d[k][1]);
        CHECK(std::abs(x.d[k][0] - (t00 * n.d[k][0] + t10 * n.d[k][1])) <= 1e-12 * s0);
        CHECK(std::abs(x.d[k][1] - (t01 * n.d[k][0] + t11 * n.d[k][1])) <= 1e-12 * s0 * e + 1e-300);
        CHECK(x.d[k][2] == n.d[k][2]);
        CHECK(x.d[k][3] == n.d[k][3]);
      }
    }
    CHECK(exponential_log_jacobian(p, L) == doctest::Approx(std::log(t00 * t11 - t01 * t10)));
  }
  CHECK(exponential_log_jacobian(frequency_params(0.5, 1.0, 0.0), L) == 0.0);
}

TEST_CASE("exponential basis stays bounded for large mu L") {
  const SegmentParams p = frequency_params(1e5, 1.0, 0.0);
  const double L = 2.0 * 3.141592653589793;
  REQUIRE(p.mu() * L > 700.0);
  for (double phi : {0.0, 1.0, L}) {
    const BasisEval x = basis_eval(p, phi, BasisScaling::Exponential, 3, L);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::isfinite(x.d[k][0]));
      CHECK(std::isfinite(x.d[k][1]));
      CHECK(std::abs(x.d[k][0]) <= std::pow(p.mu(), k) * (1 + 1e-12));
    }
  }
}

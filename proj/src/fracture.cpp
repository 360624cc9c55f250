#include "arcfreq/fracture.hpp"

#include <array>
#include <cmath>
#include <vector>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace arcfreq::fracture {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unit_interval(double s, bool allow_one, const char* who) {
  if (!(s >= 0.0) || (allow_one ? s > 1.0 : s >= 1.0)) {
    throw std::domain_error(std::string(who) + ": depth ratio out of range");
  }
}

struct GaussLegendre64 {
  std::array<double, 64> x{};
  std::array<double, 64> w{};

  GaussLegendre64() {
    constexpr int n = 64;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(mid + half * x[i]);
    return half * sum;
  }
};

const GaussLegendre64& gauss_legendre_64() {
  static const GaussLegendre64 rule;
  return rule;
}

template <class F>
double integrate(F&& f, double s, Quadrature rule, double& error) {
  if (s == 0.0) {
    error = 0.0;
    return 0.0;
  }
  if (rule == Quadrature::GaussLegendre64) {
    error = 0.0;
    return gauss_legendre_64().integrate(f, 0.0, s);
  }
  // Pieces shrink geometrically toward xi = 1, where the tangent form blows up.
  std::vector<double> cuts = {s};
  for (double gap = 1.0 - s; 1.0 - 2.0 * gap > 0.0 && cuts.size() < 60;) {
    gap *= 2.0;
    cuts.push_back(1.0 - gap);
  }
  cuts.push_back(0.0);
  double value = 0.0;
  double err = 0.0;
  for (std::size_t i = cuts.size() - 1; i > 0; --i) {
    double piece_err = 0.0;
    value += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, cuts[i], cuts[i - 1], 12,
                                                                          1e-12, &piece_err);
    err += piece_err;
  }
  error = err;
  // The Kronrod estimate is pessimistic near roundoff and close to xi = 1.
  const double allowed = std::max(1e-12, 1e-8 * std::abs(value));
  if (!(err <= allowed)) {
    throw QuadratureError("compliance quadrature did not converge (error estimate " +
                              std::to_string(err) + ")",
                          err);
  }
  return value;
}

}  // namespace

double shape_f1(double s) {
  check_unit_interval(s, true, "shape_f1");
  return 1.12 + s * (-0.23 + s * (10.55 + s * (-21.72 + s * 30.39)));
}

double shape_f2(double s) {
  check_unit_interval(s, true, "shape_f2");
  return 1.12 + s * (-1.4 + s * (7.33 + s * (-13.08 + s * 14.08)));
}

double shape_tada(double s) {
  check_unit_interval(s, false, "shape_tada");
  if (s == 0.0) return 0.923 + 0.199;
  const double x = 0.5 * kPi * s;
  const double root = std::sqrt(std::tan(x) / x);
  const double t = 1.0 - std::sin(x);
  return root * (0.923 + 0.199 * t * t * t * t) / std::cos(x);
}

ComplianceIntegrals compliance_integrals(double s, ShapeFunction shape, Quadrature rule) {
  check_unit_interval(s, false, "compliance");
  ComplianceIntegrals out;
  double e11 = 0.0;
  double e12 = 0.0;
  double e22 = 0.0;
  if (shape == ShapeFunction::Poly31_32) {
    out.j11 = integrate([](double x) { const double f = shape_f1(x); return x * f * f; }, s, rule, e11);
    out.j12 = integrate([](double x) { return x * shape_f1(x) * shape_f2(x); }, s, rule, e12);
    out.j22 = integrate([](double x) { const double f = shape_f2(x); return x * f * f; }, s, rule, e22);
  } else {
    out.j11 = integrate([](double x) { const double f = shape_tada(x); return x * f * f; }, s, rule, e11);
    out.j12 = out.j22 = out.j11;
    e12 = e22 = e11;
  }
  out.error_estimate = std::max({e11, e12, e22});
  return out;
}

LocalCompliance compliance(double s, double youngs_modulus, double width, double thickness,
                           ShapeFunction shape, ComplianceModel model, Quadrature rule) {
  if (!(youngs_modulus > 0.0 && width > 0.0 && thickness > 0.0)) {
    throw std::domain_error("compliance: E, b and h must be positive");
  }
  const ComplianceIntegrals j = compliance_integrals(s, shape, rule);
  double prefactor = 2.0 / (youngs_modulus * width);
  if (model == ComplianceModel::Dimarogonas) {
    prefactor = 72.0 * kPi / (youngs_modulus * width * thickness * thickness);
  }
  return {prefactor * j.j11, prefactor * j.j12 / thickness, prefactor * j.j22};
}

double spring_flexibility(const LocalCompliance& c, double youngs_modulus,
                          double moment_of_inertia, double radius) {
  return (c.c11 - c.c12 / radius) * youngs_modulus * moment_of_inertia / radius;
}

double crack_flexibility(double s, ShapeFunction shape, double ref_over_radius,
                         ComplianceModel model) {
  if (s == 0.0) return 0.0;
  // Thickness units: h = 1, E = 1, b = 1 (both cancel), R = R / h_ref.
  const double radius = 1.0 / ref_over_radius;
  const LocalCompliance c = compliance(s, 1.0, 1.0, 1.0, shape, model);
  return spring_flexibility(c, 1.0, 1.0 / 12.0, radius);
}

void assign_flexibilities(DimensionlessProblem& problem, ComplianceModel model) {
  for (auto& crack : problem.cracks) {
    const double ref_over_radius = crack.ref_thickness_ratio * problem.slenderness;
    crack.kappa = crack_flexibility(crack.depth_ratio, crack.shape, ref_over_radius, model);
  }
}

}  // namespace arcfreq::fracture

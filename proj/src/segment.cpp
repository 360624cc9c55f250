#include "arcfreq/segment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arcfreq {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::HyperTrig: return "hyper_trig";
    case Regime::BiTrig: return "bi_trig";
    case Regime::DegenerateZero: return "degenerate_zero";
  }
  return "?";
}

double SegmentParams::mu() const { return std::sqrt(std::abs(mu_sq)); }
double SegmentParams::nu() const { return std::sqrt(nu_sq); }

double degenerate_tolerance(double A) { return 1e-10 * std::max(1.0, A); }

SegmentParams frequency_params(double omega, double thickness_ratio, double eta_bar) {
  SegmentParams p;
  p.A = omega * omega / (thickness_ratio * thickness_ratio);
  p.B = 0.5 * std::sqrt(p.A * p.A * eta_bar * eta_bar + 4.0 * p.A * (1.0 + eta_bar));
  p.nu_sq = 1.0 + 0.5 * eta_bar * p.A + p.B;
  // The two roots in lambda^2 multiply to 1 - A; this avoids the cancellation
  // in -1 - eta A / 2 + B near A = 1.
  p.mu_sq = (p.A - 1.0) / p.nu_sq;
  if (std::abs(p.mu_sq) <= degenerate_tolerance(p.A)) {
    p.regime = Regime::DegenerateZero;
  } else {
    p.regime = p.mu_sq > 0.0 ? Regime::HyperTrig : Regime::BiTrig;
  }
  return p;
}

double exponential_log_jacobian(const SegmentParams& p, double segment_length) {
  if (p.regime != Regime::HyperTrig) return 0.0;
  return std::log(2.0 * p.mu()) - p.mu() * segment_length;
}

BasisEval basis_eval(const SegmentParams& p, double phi, BasisScaling scaling,
                     int max_derivative_order, double segment_length) {
  if (max_derivative_order < 0 || max_derivative_order > 4) {
    throw std::invalid_argument("basis_eval: derivative order must be in [0, 4]");
  }
  BasisEval e;
  auto& d = e.d;
  const bool normalized = scaling != BasisScaling::Raw;

  switch (p.regime) {
    case Regime::HyperTrig: {
      const double m = p.mu();
      if (scaling == BasisScaling::Exponential) {
        const double a = std::exp(-m * phi);
        const double b = std::exp(-m * (segment_length - phi));
        double f = 1.0;
        for (int k = 0; k <= 4; ++k) {
          d[k][0] = ((k % 2) ? -f : f) * a;
          d[k][1] = f * b;
          f *= m;
        }
        break;
      }
      const double c = std::cosh(m * phi);
      const double s = std::sinh(m * phi);
      const double m2 = m * m;
      d[0][0] = c; d[1][0] = m * s; d[2][0] = m2 * c; d[3][0] = m2 * m * s; d[4][0] = m2 * m2 * c;
      if (normalized) {
        d[0][1] = s / m; d[1][1] = c; d[2][1] = m * s; d[3][1] = m2 * c; d[4][1] = m2 * m * s;
      } else {
        d[0][1] = s; d[1][1] = m * c; d[2][1] = m2 * s; d[3][1] = m2 * m * c; d[4][1] = m2 * m2 * s;
      }
      break;
    }
    case Regime::BiTrig: {
      const double m = p.mu();
      const double c = std::cos(m * phi);
      const double s = std::sin(m * phi);
      const double m2 = m * m;
      d[0][0] = c; d[1][0] = -m * s; d[2][0] = -m2 * c; d[3][0] = m2 * m * s; d[4][0] = m2 * m2 * c;
      if (normalized) {
        d[0][1] = s / m; d[1][1] = c; d[2][1] = -m * s; d[3][1] = -m2 * c; d[4][1] = m2 * m * s;
      } else {
        d[0][1] = s; d[1][1] = m * c; d[2][1] = -m2 * s; d[3][1] = -m2 * m * c; d[4][1] = m2 * m2 * s;
      }
      break;
    }
    case Regime::DegenerateZero:
      d[0][0] = 1.0;
      d[0][1] = phi;
      d[1][1] = 1.0;
      break;
  }

  const double n = p.nu();
  const double c = std::cos(n * phi);
  const double s = std::sin(n * phi);
  const double n2 = n * n;
  d[0][2] = c; d[1][2] = -n * s; d[2][2] = -n2 * c; d[3][2] = n2 * n * s; d[4][2] = n2 * n2 * c;
  d[0][3] = s; d[1][3] = n * c; d[2][3] = -n2 * s; d[3][3] = -n2 * n * c; d[4][3] = n2 * n2 * s;

  for (int k = max_derivative_order + 1; k <= 4; ++k) d[k].fill(0.0);
  return e;
}

double ode_residual(const SegmentParams& p, double eta_bar, double phi, int fn,
                    BasisScaling scaling, double segment_length) {
  const BasisEval e = basis_eval(p, phi, scaling, 4, segment_length);
  return e.d[4][fn] + (2.0 + p.A * eta_bar) * e.d[2][fn] + (1.0 - p.A) * e.d[0][fn];
}

}  // namespace arcfreq

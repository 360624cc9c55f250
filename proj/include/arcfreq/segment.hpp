#pragma once

#include <array>

namespace arcfreq {

/// Root structure of lambda^4 + (2 + A eta) lambda^2 + 1 - A = 0.
enum class Regime {
  HyperTrig,       // mu^2 > 0: {cosh, sinh, cos, sin}
  BiTrig,          // mu^2 < 0: {cos, sin, cos, sin}
  DegenerateZero,  // mu^2 ~ 0: double root lambda = 0, {1, phi, cos, sin}
};

const char* to_string(Regime r);

struct SegmentParams {
  double A = 0.0;
  double B = 0.0;
  double mu_sq = -1.0;
  double nu_sq = 1.0;
  Regime regime = Regime::BiTrig;

  /// sqrt(|mu_sq|), i.e. mu in HyperTrig and mu_hat in BiTrig.
  double mu() const;
  double nu() const;
};

/// Tolerance below which |mu_sq| is treated as the double root.
double degenerate_tolerance(double A);

SegmentParams frequency_params(double omega, double thickness_ratio, double eta_bar);

enum class BasisScaling {
  Raw,         // {cosh mu phi, sinh mu phi, cos nu phi, sin nu phi}
  Normalized,  // second function divided by mu (or mu_hat); continuous across regimes
  // HyperTrig only: {exp(-mu phi), exp(-mu (L - phi)), cos, sin} on a segment of
  // length L. Stays bounded for large mu L. Other regimes fall back to Normalized.
  Exponential,
};

/// d[k][i] = k-th angle derivative of basis function i, k = 0..4.
struct BasisEval {
  std::array<std::array<double, 4>, 5> d{};

  double value(int order, int fn) const { return d[order][fn]; }
};

/// `segment_length` is only read by the Exponential scaling.
BasisEval basis_eval(const SegmentParams& p, double phi, BasisScaling scaling = BasisScaling::Raw,
                     int max_derivative_order = 3, double segment_length = 0.0);

/// log det T where [exp(-mu phi), exp(-mu (L - phi))] = [cosh, sinh / mu] T, i.e.
/// log(2 mu) - mu L. Zero when the Exponential scaling falls back.
double exponential_log_jacobian(const SegmentParams& p, double segment_length);

/// Residual of X'''' + (2 + A eta) X'' + (1 - A) X for basis function `fn` at phi.
double ode_residual(const SegmentParams& p, double eta_bar, double phi, int fn,
                    BasisScaling scaling = BasisScaling::Raw, double segment_length = 0.0);

}  // namespace arcfreq

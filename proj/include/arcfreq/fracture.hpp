#pragma once

#include <stdexcept>

#include "arcfreq/model.hpp"

namespace arcfreq::fracture {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double error_estimate)
      : std::runtime_error(what), error_estimate_(error_estimate) {}
  double error_estimate() const { return error_estimate_; }

 private:
  double error_estimate_;
};

/// 1.12 - 0.23 s + 10.55 s^2 - 21.72 s^3 + 30.39 s^4, s in [0, 1].
double shape_f1(double s);
/// 1.12 - 1.4 s + 7.33 s^2 - 13.08 s^3 + 14.08 s^4, s in [0, 1].
double shape_f2(double s);
/// Tada tangent form; s in [0, 1), the s -> 0 limit (1.122) is used at 0.
double shape_tada(double s);

struct LocalCompliance {
  double c11 = 0.0;
  double c12 = 0.0;  // == c21
  double c22 = 0.0;
};

/// Integrals J_ab(s) = int_0^s xi F_a(xi) F_b(xi) dxi for the selected family.
struct ComplianceIntegrals {
  double j11 = 0.0;
  double j12 = 0.0;
  double j22 = 0.0;
  double error_estimate = 0.0;
};

enum class Quadrature { Adaptive, GaussLegendre64 };

ComplianceIntegrals compliance_integrals(double s, ShapeFunction shape,
                                         Quadrature rule = Quadrature::Adaptive);

/// Local compliance of a cracked section:
///   c11 = 2/(E b)   J11,  c12 = 2/(E b h) J12,  c22 = 2/(E b) J22
/// (Paper), or the same with 2/(E b) replaced by 72 pi/(E b h^2) (Dimarogonas).
LocalCompliance compliance(double s, double youngs_modulus, double width, double thickness,
                           ShapeFunction shape, ComplianceModel model = ComplianceModel::Paper,
                           Quadrature rule = Quadrature::Adaptive);

/// kappa = (c11 - c12/R) E I / R, the coefficient in
///   [X'] = kappa (X'' + (1 + A eta) X) / (1 + eta), kappa >= 0 softening.
double spring_flexibility(const LocalCompliance& c, double youngs_modulus,
                          double moment_of_inertia, double radius);

/// kappa for a crack of depth ratio s in a section of thickness h_ref, evaluated in
/// units of h_ref (E and b cancel). `ref_over_radius` = h_ref / R.
double crack_flexibility(double s, ShapeFunction shape, double ref_over_radius,
                         ComplianceModel model = ComplianceModel::Paper);

/// Fills Crack::kappa for every crack of `problem`.
void assign_flexibilities(DimensionlessProblem& problem, ComplianceModel model);

}  // namespace arcfreq::fracture

#pragma once

#include <Eigen/Dense>

namespace arcfreq {

/// det(A) = sign * exp(log_abs). sign == 0 when a pivot is exactly zero.
struct LogDeterminant {
  int sign = 0;
  double log_abs = 0.0;

  double value() const;
};

/// LU with partial pivoting; the input is taken by value and overwritten.
LogDeterminant lu_log_determinant(Eigen::MatrixXd a);

/// Null vector of a (numerically) singular square matrix. Factorizes with
/// complete pivoting, frees the column of the smallest final pivot and
/// back-substitutes. Returned vector has unit 2-norm.
Eigen::VectorXd null_vector(Eigen::MatrixXd a);

}  // namespace arcfreq

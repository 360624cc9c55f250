#include "arcfreq/lu.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace arcfreq {

double LogDeterminant::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

LogDeterminant lu_log_determinant(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("lu_log_determinant: matrix is not square");
  LogDeterminant out{1, 0.0};
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(a(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return {0, -std::numeric_limits<double>::infinity()};
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      out.sign = -out.sign;
    }
    const double pivot = a(k, k);
    if (pivot < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(pivot));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      a.row(i).tail(n - k - 1) -= f * a.row(k).tail(n - k - 1);
    }
  }
  return out;
}

Eigen::VectorXd null_vector(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols() || n == 0) throw std::invalid_argument("null_vector: matrix must be square");
  std::vector<Eigen::Index> col(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = i;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = k;
    Eigen::Index pc = k;
    double best = -1.0;
    for (Eigen::Index j = k; j < n; ++j) {
      for (Eigen::Index i = k; i < n; ++i) {
        const double v = std::abs(a(i, j));
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr != k) a.row(k).swap(a.row(pr));
    if (pc != k) {
      a.col(k).swap(a.col(pc));
      std::swap(col[static_cast<std::size_t>(k)], col[static_cast<std::size_t>(pc)]);
    }
    if (best == 0.0) break;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = 0.0;
      if (f != 0.0) a.row(i).tail(n - k - 1) -= f * a.row(k).tail(n - k - 1);
    }
  }

  // The last pivot is the smallest under complete pivoting: free that unknown.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  y(n - 1) = 1.0;
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    double acc = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) acc += a(i, j) * y(j);
    y(i) = a(i, i) == 0.0 ? 0.0 : -acc / a(i, i);
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(col[static_cast<std::size_t>(i)]) = y(i);
  return x / x.norm();
}

}  // namespace arcfreq

#ifndef GPFW_SPECTRUM_HPP_
#define GPFW_SPECTRUM_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gpfw/errors.hpp"

namespace gpfw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline bool is_symmetric(const Matrix& A, double tol_scale = 1e-12) {
  if (A.rows() != A.cols()) return false;
  const double scale = A.cwiseAbs().maxCoeff();
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= tol_scale * std::max(1.0, scale);
}

struct Spectrum {
  Vector eigenvalues;   // sorted ascending
  Matrix eigenvectors;  // columns, same order
};

/// Dense symmetric eigendecomposition by the cyclic Jacobi rotation method.
/// Used as the independent oracle behind every eigenvalue check, so it is
/// deliberately self-contained.
inline Spectrum jacobi_spectrum(const Matrix& A_in) {
  if (!is_symmetric(A_in))
    throw NotSymmetric("jacobi_spectrum: matrix is not symmetric");
  const int n = static_cast<int>(A_in.rows());
  Matrix A = A_in;
  Matrix V = Matrix::Identity(n, n);

  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double tol = 1e-15 * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
    if (off <= tol) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= tol * 1e-2) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return A(i, i) < A(j, j); });
  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = A(order[i], order[i]);
    out.eigenvectors.col(i) = V.col(order[i]);
  }
  return out;
}

}  // namespace gpfw

#endif  // GPFW_SPECTRUM_HPP_
